#include "cubesieve/arithsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "cubesieve/text.hpp"

namespace cubesieve {
namespace {

constexpr std::uint64_t kMaxFactorizable = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

// r^k when it is <= limit
std::optional<std::uint64_t> bounded_power(std::uint64_t r, unsigned k, std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r != 0 && acc > limit / r) return std::nullopt;
    acc *= r;
  }
  return acc;
}

std::uint64_t isqrt(unsigned __int128 n) {
  auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<std::uint64_t>(r);
}

bool is_perfect_square(unsigned __int128 n, std::uint64_t& root) {
  root = isqrt(n);
  return static_cast<unsigned __int128>(root) * root == n;
}

std::int64_t floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

bool quad_form_represents(const QuadraticForm& f, std::uint64_t n) {
  // 4a f(x,y) = (2ax + by)^2 + D y^2 with D = 4ac - b^2 > 0
  const __int128 a = f.a, b = f.b;
  const __int128 d = -static_cast<__int128>(f.discriminant());
  const __int128 four_an = 4 * a * static_cast<__int128>(n);
  for (__int128 y = 0; d * y * y <= four_an; ++y) {
    std::uint64_t s = 0;
    if (!is_perfect_square(static_cast<unsigned __int128>(four_an - d * y * y), s)) continue;
    for (int sign : {-1, 1}) {
      const __int128 num = -b * y + sign * static_cast<__int128>(s);
      if (num % (2 * a) == 0) return true;
    }
  }
  return false;
}

std::vector<std::uint64_t> squareful_list(std::uint64_t limit) {
  // each squareful n is uniquely a^2 b^3 with b squarefree
  std::vector<std::uint64_t> out;
  const std::uint64_t bmax = integer_root(limit, 3);
  std::vector<bool> squarefree(bmax + 1, true);
  for (std::uint64_t k = 2; k * k <= bmax; ++k) {
    for (std::uint64_t m = k * k; m <= bmax; m += k * k) squarefree[m] = false;
  }
  for (std::uint64_t b = 1; b <= bmax; ++b) {
    if (!squarefree[b]) continue;
    const std::uint64_t cube = b * b * b;
    const std::uint64_t amax = integer_root(limit / cube, 2);
    for (std::uint64_t a = 1; a <= amax; ++a) out.push_back(a * a * cube);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> pure_power_list(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit >= 1) out.push_back(1);
  for (unsigned e = 2; e < 64; ++e) {
    if (!bounded_power(2, e, limit)) break;
    for (std::uint64_t a = 2;; ++a) {
      const auto v = bounded_power(a, e, limit);
      if (!v) break;
      out.push_back(*v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<bool> table_from_list(const std::vector<std::uint64_t>& members, std::uint64_t limit) {
  std::vector<bool> table(limit + 1, false);
  for (std::uint64_t m : members) table[m] = true;
  return table;
}

}  // namespace

Factorization factorize(std::uint64_t n) {
  if (n == 0 || n > kMaxFactorizable) {
    throw std::out_of_range("factorize: " + std::to_string(n) + " outside [1, 2^63-1]");
  }
  Factorization f;
  f.n = n;
  auto divide_out = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.factors.emplace_back(p, e);
  };
  divide_out(2);
  divide_out(3);
  divide_out(5);
  static constexpr std::uint64_t kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t d = 7;
  for (int i = 0; d <= n / d; d += kWheel[i], i = (i + 1) & 7) divide_out(d);
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

std::uint64_t integer_root(std::uint64_t n, unsigned k) {
  if (k == 0) throw std::invalid_argument("integer_root: k must be positive");
  if (k == 1 || n < 2) return n;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
  while (r > 0 && !bounded_power(r, k, n)) --r;
  while (bounded_power(r + 1, k, n)) ++r;
  return r;
}

SetDescriptor::SetDescriptor(RFull s) : v_(std::move(s)) {
  if (std::get<RFull>(v_).r < 2) throw std::invalid_argument("rfull requires r >= 2");
}

SetDescriptor::SetDescriptor(QuadFormValues s) : v_(s) { require_definite_irreducible(s.form); }

SetDescriptor SetDescriptor::parse(const std::string& text_in) {
  const std::string_view text = text::trim(text_in);
  if (text == "squareful") return Squareful{};
  if (text == "purepowers") return PurePowers{};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("unknown set descriptor '" + std::string(text) + "'");
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (head == "rfull") {
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("rfull:r,<primeset> expects a prime set");
    return RFull{text::parse_int<unsigned>(body.substr(0, comma)), PrimeSet::parse(std::string(body.substr(comma + 1)))};
  }
  if (head == "semigroup") return Semigroup{PrimeSet::parse(std::string(body))};
  if (head == "quadform") {
    const auto v = text::parse_int_list<std::int64_t>(body);
    if (v.size() != 3) throw std::invalid_argument("quadform:a,b,c expects three integers");
    return QuadFormValues{{v[0], v[1], v[2]}};
  }
  throw std::invalid_argument("unknown set descriptor '" + std::string(text) + "'");
}

std::string SetDescriptor::to_string() const {
  struct Printer {
    std::string operator()(const Squareful&) const { return "squareful"; }
    std::string operator()(const PurePowers&) const { return "purepowers"; }
    std::string operator()(const RFull& s) const { return "rfull:" + std::to_string(s.r) + "," + s.primes.to_string(); }
    std::string operator()(const QuadFormValues& s) const {
      return "quadform:" + std::to_string(s.form.a) + "," + std::to_string(s.form.b) + "," + std::to_string(s.form.c);
    }
    std::string operator()(const Semigroup& s) const { return "semigroup:" + s.primes.to_string(); }
  };
  return std::visit(Printer{}, v_);
}

bool is_member(const SetDescriptor& set, std::uint64_t n) {
  if (n == 0) return false;
  struct Member {
    std::uint64_t n;
    bool operator()(const Squareful&) const {
      for (const auto& [p, e] : factorize(n).factors) {
        if (e < 2) return false;
      }
      return true;
    }
    bool operator()(const RFull& s) const {
      for (const auto& [p, e] : factorize(n).factors) {
        if (e < s.r && s.primes.contains(p)) return false;
      }
      return true;
    }
    bool operator()(const Semigroup& s) const {
      for (const auto& [p, e] : factorize(n).factors) {
        if (!s.primes.contains(p)) return false;
      }
      return true;
    }
    bool operator()(const PurePowers&) const {
      if (n == 1) return true;
      for (unsigned e = 2; e < 64; ++e) {
        const std::uint64_t r = integer_root(n, e);
        if (r < 2) break;
        if (bounded_power(r, e, n) == n) return true;
      }
      return false;
    }
    bool operator()(const QuadFormValues& s) const { return quad_form_represents(s.form, n); }
  };
  return std::visit(Member{n}, set.variant());
}

std::vector<bool> membership_table(const SetDescriptor& set, std::uint64_t limit) {
  struct Table {
    std::uint64_t limit;
    std::vector<bool> operator()(const Squareful&) const { return table_from_list(squareful_list(limit), limit); }
    std::vector<bool> operator()(const PurePowers&) const { return table_from_list(pure_power_list(limit), limit); }
    std::vector<bool> operator()(const RFull& s) const {
      std::vector<bool> t(limit + 1, true);
      t[0] = false;
      for (std::uint64_t p : s.primes.list(limit)) {
        const auto pr = bounded_power(p, s.r, limit);
        for (std::uint64_t k = p; k <= limit; k += p) {
          if (!pr || k % *pr != 0) t[k] = false;
        }
      }
      return t;
    }
    std::vector<bool> operator()(const Semigroup& s) const {
      std::vector<bool> t(limit + 1, true);
      t[0] = false;
      for (std::uint64_t p : primes_up_to(limit)) {
        if (s.primes.contains(p)) continue;
        for (std::uint64_t k = p; k <= limit; k += p) t[k] = false;
      }
      return t;
    }
    std::vector<bool> operator()(const QuadFormValues& s) const {
      std::vector<bool> t(limit + 1, false);
      const __int128 a = s.form.a, b = s.form.b, c = s.form.c;
      const __int128 d = -static_cast<__int128>(s.form.discriminant());
      const __int128 four_an = 4 * a * static_cast<__int128>(limit);
      for (__int128 y = 0; d * y * y <= four_an; ++y) {
        // x range where (2ax + by)^2 <= 4aN - D y^2
        const std::uint64_t root = isqrt(static_cast<unsigned __int128>(four_an - d * y * y));
        const std::int64_t lo = ceil_div(-b * y - root, 2 * a);
        const std::int64_t hi = floor_div(-b * y + root, 2 * a);
        for (__int128 x = lo; x <= hi; ++x) {
          const __int128 v = a * x * x + b * x * y + c * y * y;
          if (v >= 1 && v <= static_cast<__int128>(limit)) t[static_cast<std::size_t>(v)] = true;
        }
      }
      return t;
    }
  };
  return std::visit(Table{limit}, set.variant());
}

std::vector<std::uint64_t> enumerate(const SetDescriptor& set, std::uint64_t limit) {
  if (std::holds_alternative<Squareful>(set.variant())) return squareful_list(limit);
  if (std::holds_alternative<PurePowers>(set.variant())) return pure_power_list(limit);
  const std::vector<bool> table = membership_table(set, limit);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (table[n]) out.push_back(n);
  }
  return out;
}

}  // namespace cubesieve
