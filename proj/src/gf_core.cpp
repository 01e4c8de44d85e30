#include "permtrace/gf_core.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace permtrace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::NotQuadraticExtension: return "NotQuadraticExtension";
    case ErrorCode::BadSubfieldDegree: return "BadSubfieldDegree";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ZeroAlpha: return "ZeroAlpha";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::ConstructionInconsistent: return "ConstructionInconsistent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::uint64_t configured_field_cap() {
  if (const char* env = std::getenv("PERMTRACE_CAP")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultFieldCap;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  const auto primes = distinct_prime_factors(q);
  if (q < 2 || primes.size() != 1) return std::nullopt;
  std::uint32_t k = 0;
  for (std::uint64_t v = q; v > 1; v /= primes[0]) ++k;
  return std::make_pair(static_cast<std::uint32_t>(primes[0]), k);
}

namespace {

// Dense polynomials over F_p, low degree first. Only used for the
// irreducibility search, so clarity wins over speed here.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j)
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * f[j]) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree m is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= m/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m <= 1) return m == 1;
  Poly h{0, 1};
  for (std::size_t i = 1; i <= m / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly d = h;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    if (poly_gcd(f, d, p).size() > 1) return false;
  }
  return true;
}

Poly least_irreducible(std::uint32_t p, std::uint32_t m) {
  // Candidate order: c_0 most significant, then c_1, ..., c_{m-1}.
  Poly f(m + 1, 0);
  f[m] = 1;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < m; ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = m; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  // Unreachable: irreducible polynomials of every degree exist over F_p.
  throw Error(ErrorCode::BadParameters, "no irreducible polynomial found");
}

}  // namespace

FieldCtx FieldCtx::build(std::uint32_t p, std::uint32_t k, std::uint32_t n, std::uint64_t cap) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k == 0 || n == 0) throw Error(ErrorCode::BadParameters, "k and n must be positive");
  const std::uint32_t m = k * n;
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    size *= p;
    if (size > cap || size > (std::uint64_t{1} << 31))
      throw Error(ErrorCode::CapExceeded, "p^m exceeds field cap " + std::to_string(cap));
  }

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.k_ = k;
  ctx.n_ = n;
  ctx.size_ = static_cast<std::uint32_t>(size);
  ctx.q_ = 1;
  for (std::uint32_t i = 0; i < k; ++i) ctx.q_ *= p;
  ctx.pow_p_.resize(m + 1);
  ctx.pow_p_[0] = 1;
  for (std::uint32_t i = 1; i <= m; ++i) ctx.pow_p_[i] = ctx.pow_p_[i - 1] * p;
  ctx.modulus_ = least_irreducible(p, m);

  if (size <= kLogTableLimit) ctx.build_log_tables();
  ctx.build_linear_tables();

  for (std::uint32_t i = 0; i < ctx.size_; ++i)
    if (ctx.frob_q_[i].index == i) ctx.subfield_.push_back(Elt{i});
  return ctx;
}

Elt FieldCtx::elem(std::uint32_t index) const {
  if (index >= size_)
    throw Error(ErrorCode::BadParameters, "element index " + std::to_string(index) + " out of range");
  return Elt{index};
}

Elt FieldCtx::from_int(std::int64_t v) const noexcept {
  const std::int64_t r = ((v % p_) + p_) % p_;
  return Elt{static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> FieldCtx::digits(Elt x) const {
  std::vector<std::uint32_t> d(m(), 0);
  std::uint32_t v = x.index;
  for (auto& di : d) {
    di = v % p_;
    v /= p_;
  }
  return d;
}

Elt FieldCtx::from_digits(std::span<const std::uint32_t> d) const {
  if (d.size() > m()) throw Error(ErrorCode::BadParameters, "too many digits");
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] >= p_) throw Error(ErrorCode::BadParameters, "digit out of range");
    v = v * p_ + d[i];
  }
  return Elt{v};
}

Elt FieldCtx::add(Elt a, Elt b) const noexcept {
  if (p_ == 2) return Elt{a.index ^ b.index};
  std::uint32_t x = a.index, y = b.index, r = 0, scale = 1;
  while (x | y) {
    std::uint32_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    r += d * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return Elt{r};
}

Elt FieldCtx::neg(Elt a) const noexcept {
  if (p_ == 2) return a;
  std::uint32_t x = a.index, r = 0, scale = 1;
  while (x) {
    const std::uint32_t d = x % p_;
    if (d) r += (p_ - d) * scale;
    scale *= p_;
    x /= p_;
  }
  return Elt{r};
}

Elt FieldCtx::sub(Elt a, Elt b) const noexcept { return add(a, neg(b)); }

Elt FieldCtx::mul_reference(Elt a, Elt b) const noexcept {
  if (a.is_zero() || b.is_zero()) return Elt{0};
  const std::uint32_t mm = m();
  std::vector<std::uint64_t> prod(2 * mm, 0);
  std::vector<std::uint32_t> da(mm), db(mm);
  for (std::uint32_t i = 0, x = a.index, y = b.index; i < mm; ++i, x /= p_, y /= p_) {
    da[i] = x % p_;
    db[i] = y % p_;
  }
  for (std::uint32_t i = 0; i < mm; ++i) {
    if (!da[i]) continue;
    for (std::uint32_t j = 0; j < mm; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  for (std::uint32_t d = 2 * mm - 1; d-- > mm;) {
    const std::uint64_t c = prod[d] % p_;
    if (!c) continue;
    prod[d] = 0;
    const std::uint32_t shift = d - mm;
    for (std::uint32_t j = 0; j < mm; ++j)
      prod[shift + j] = (prod[shift + j] + (p_ - c) * modulus_[j]) % p_;
  }
  std::uint32_t v = 0;
  for (std::uint32_t i = mm; i-- > 0;) v = v * p_ + static_cast<std::uint32_t>(prod[i] % p_);
  return Elt{v};
}

Elt FieldCtx::mul(Elt a, Elt b) const noexcept {
  if (a.is_zero() || b.is_zero()) return Elt{0};
  if (!log_.empty()) return exp_[log_[a.index] + log_[b.index]];
  return mul_reference(a, b);
}

Elt FieldCtx::pow(Elt a, std::uint64_t e) const noexcept {
  if (e == 0) return Elt{1};
  if (a.is_zero()) return Elt{0};
  if (!log_.empty()) {
    const std::uint64_t order = size_ - 1;
    return exp_[(std::uint64_t{log_[a.index]} * (e % order)) % order];
  }
  Elt r{1};
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt FieldCtx::inv(Elt a) const {
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (!log_.empty()) {
    const std::uint32_t order = size_ - 1;
    return exp_[(order - log_[a.index]) % order];
  }
  return pow(a, std::uint64_t{size_} - 2);
}

Elt FieldCtx::frob_p_power(Elt x, std::uint32_t t) const noexcept {
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < t % m(); ++i) e *= p_;
  return pow(x, e);
}

void FieldCtx::build_log_tables() {
  if (size_ < 2) return;
  const std::uint64_t order = size_ - 1;
  const auto primes = distinct_prime_factors(order);
  auto pow_ref = [&](Elt a, std::uint64_t e) {
    Elt r{1};
    while (e) {
      if (e & 1) r = mul_reference(r, a);
      a = mul_reference(a, a);
      e >>= 1;
    }
    return r;
  };
  Elt gen{0};
  for (std::uint32_t g = 1; g < size_; ++g) {
    bool primitive = true;
    for (auto r : primes) {
      if (pow_ref(Elt{g}, order / r) == Elt{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = Elt{g};
      break;
    }
  }
  exp_.resize(2 * order);
  log_.assign(size_, 0);
  Elt cur{1};
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = cur;
    exp_[i + order] = cur;
    log_[cur.index] = static_cast<std::uint32_t>(i);
    cur = mul_reference(cur, gen);
  }
}

void FieldCtx::build_linear_tables() {
  // Both x -> x^q and Tr are F_p-linear, so a table is filled from the images
  // of the monomial basis x^j with one addition per element.
  const std::uint32_t mm = m();
  auto fill = [&](const std::vector<Elt>& images) {
    std::vector<Elt> multiples(std::size_t{mm} * p_);
    for (std::uint32_t j = 0; j < mm; ++j) {
      Elt acc{0};
      for (std::uint32_t d = 0; d < p_; ++d) {
        multiples[std::size_t{j} * p_ + d] = acc;
        acc = add(acc, images[j]);
      }
    }
    std::vector<Elt> table(size_);
    std::uint32_t top = 0;
    for (std::uint32_t x = 1; x < size_; ++x) {
      while (top + 1 < mm && x >= pow_p_[top + 1]) ++top;
      const std::uint32_t d = x / pow_p_[top];
      const std::uint32_t rest = x - d * pow_p_[top];
      table[x] = add(table[rest], multiples[std::size_t{top} * p_ + d]);
    }
    return table;
  };

  std::vector<Elt> frob_images(mm), trace_images(mm);
  for (std::uint32_t j = 0; j < mm; ++j) {
    const Elt basis{pow_p_[j]};
    frob_images[j] = pow(basis, q_);
    Elt acc = basis, cur = basis;
    for (std::uint32_t i = 1; i < n_; ++i) {
      cur = pow(cur, q_);
      acc = add(acc, cur);
    }
    trace_images[j] = acc;
  }
  frob_q_ = fill(frob_images);
  trace_ = fill(trace_images);
}

Elt FieldCtx::find_nonresidue() const {
  if (p_ == 2) throw Error(ErrorCode::EvenCharacteristic, "no quadratic non-residue in characteristic 2");
  for (Elt s : subfield_) {
    if (s.is_zero()) continue;
    if (pow(s, (q_ - 1) / 2) != Elt{1}) return s;
  }
  throw Error(ErrorCode::BadParameters, "subfield has no non-residue");
}

Elt FieldCtx::quadratic_alpha() const {
  if (n_ != 2) throw Error(ErrorCode::NotQuadraticExtension, "basis {1, alpha} needs n = 2");
  const Elt u = find_nonresidue();
  for (std::uint32_t i = 1; i < size_; ++i)
    if (mul(Elt{i}, Elt{i}) == u) return Elt{i};
  throw Error(ErrorCode::BadParameters, "no square root of the non-residue");
}

bool FieldCtx::is_subfield_square(Elt s) const {
  if (s.is_zero() || p_ == 2) return true;
  return pow(s, (q_ - 1) / 2) == Elt{1};
}

std::vector<std::uint8_t> subfield_span(const FieldCtx& ctx, std::span<const Elt> vectors) {
  std::vector<std::uint8_t> in_span(ctx.size(), 0);
  std::vector<Elt> members{Elt{0}};
  in_span[0] = 1;
  const auto sub = ctx.subfield_elems();
  for (Elt v : vectors) {
    const std::size_t count = members.size();
    for (Elt s : sub) {
      if (s.is_zero()) continue;
      const Elt sv = ctx.mul(s, v);
      for (std::size_t i = 0; i < count; ++i) {
        const Elt w = ctx.add(members[i], sv);
        if (!in_span[w.index]) {
          in_span[w.index] = 1;
          members.push_back(w);
        }
      }
    }
  }
  return in_span;
}

bool subfield_independent(const FieldCtx& ctx, std::span<const Elt> vectors) {
  const auto bitmap = subfield_span(ctx, vectors);
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    expected *= ctx.q();
    if (expected > ctx.size()) return false;
  }
  return static_cast<std::uint64_t>(std::count(bitmap.begin(), bitmap.end(), 1)) == expected;
}

std::vector<Elt> FieldCtx::subfield_basis() const {
  std::vector<Elt> basis;
  std::vector<std::uint8_t> in_span(size_, 0);
  in_span[0] = 1;
  for (std::uint32_t i = 1; i < size_ && basis.size() < n_; ++i) {
    if (in_span[i]) continue;
    basis.push_back(Elt{i});
    in_span = subfield_span(*this, basis);
  }
  return basis;
}

}  // namespace permtrace
