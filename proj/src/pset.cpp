#include "permtrace/pset.hpp"

#include <algorithm>

namespace permtrace {

std::vector<Elt> PreimagePartition::value_set() const {
  std::vector<Elt> out;
  out.reserve(classes.size());
  for (const auto& [b, members] : classes) out.push_back(Elt{b});
  return out;
}

PreimagePartition preimage_partition(const FieldCtx& ctx, const FunctionTable& tt) {
  check_table(ctx, tt);
  PreimagePartition part;
  for (std::uint32_t i = 0; i < tt.size(); ++i) part.classes[tt.values[i].index].push_back(Elt{i});
  return part;
}

std::vector<Elt> ph_bruteforce(const FieldCtx& ctx, const FunctionTable& tt) {
  check_table(ctx, tt);
  std::vector<Elt> out;
  std::vector<Elt> image(ctx.size());
  std::vector<std::uint8_t> scratch;
  for (std::uint32_t g = 0; g < ctx.size(); ++g) {
    const Elt gamma{g};
    for (std::uint32_t i = 0; i < ctx.size(); ++i) image[i] = ctx.add(Elt{i}, ctx.mul(gamma, tt.values[i]));
    if (is_permutation(image, scratch)) out.push_back(gamma);
  }
  return out;
}

std::vector<Elt> ph_directions(const FieldCtx& ctx, const PreimagePartition& part, Accumulation mode) {
  const std::uint32_t size = ctx.size();
  std::vector<std::uint8_t> hit(size, 0);
  std::uint32_t hits = 0;
  const std::uint32_t saturated = size - 1;  // 0 is never a difference quotient

  std::vector<Elt> diffs;
  for (auto bi = part.classes.begin(); bi != part.classes.end(); ++bi) {
    for (auto ci = std::next(bi); ci != part.classes.end(); ++ci) {
      // {(y - x)/(b - c)} for (b, c) and (c, b) coincide, so unordered pairs suffice.
      const Elt scale = ctx.inv(ctx.sub(Elt{bi->first}, Elt{ci->first}));
      for (Elt x : bi->second) {
        const Elt neg_x = ctx.neg(x);
        for (Elt y : ci->second) {
          const Elt d = ctx.mul(ctx.add(y, neg_x), scale);
          if (!hit[d.index]) {
            hit[d.index] = 1;
            ++hits;
          }
        }
        if (mode == Accumulation::EarlyExit && hits == saturated) goto done;
      }
    }
  }
done:
  std::vector<Elt> out;
  for (std::uint32_t g = 0; g < size; ++g)
    if (!hit[g]) out.push_back(Elt{g});
  return out;
}

std::uint64_t direction_set_size(const FieldCtx& ctx, const FunctionTable& tt, bool force) {
  check_table(ctx, tt);
  const std::uint32_t size = ctx.size();
  if (size > kDirectionPairCap && !force)
    throw Error(ErrorCode::CapExceeded, "direction set enumeration is quadratic; field exceeds 1024 elements");
  std::vector<std::uint8_t> seen(size, 0);
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x < size; ++x) {
    const Elt neg_x = ctx.neg(Elt{x});
    const Elt neg_fx = ctx.neg(tt.values[x]);
    for (std::uint32_t y = x + 1; y < size; ++y) {
      const Elt d = ctx.div(ctx.add(tt.values[y], neg_fx), ctx.add(Elt{y}, neg_x));
      if (!seen[d.index]) {
        seen[d.index] = 1;
        ++count;
      }
    }
  }
  return count;
}

std::optional<Elt> detect_linearity(const FieldCtx& ctx, const FunctionTable& tt) {
  check_table(ctx, tt);
  for (std::uint32_t u = 0; u < ctx.size(); ++u) {
    bool match = true;
    for (std::uint32_t x = 0; x < ctx.size() && match; ++x)
      match = ctx.rel_trace(ctx.mul(Elt{u}, Elt{x})) == tt.values[x];
    if (match) return Elt{u};
  }
  return std::nullopt;
}

std::uint64_t ph_upper_bound(const FieldCtx& ctx) { return ctx.size() - ctx.size() / ctx.q(); }

bool PHReport::contains(Elt gamma) const { return std::binary_search(ph.begin(), ph.end(), gamma); }

bool PHReport::all_ok() const noexcept { return bound_ok && gap_ok && linearity_ok && large_ph_linear_ok; }

PHReport cardinality_audit(const FieldCtx& ctx, const FunctionTable& tt, bool force_directions) {
  const auto part = preimage_partition(ctx, tt);
  PHReport report;
  report.ph = ph_directions(ctx, part);
  for (std::uint32_t g = 0, j = 0; g < ctx.size(); ++g) {
    if (j < report.ph.size() && report.ph[j].index == g)
      ++j;
    else
      report.ph_complement.push_back(Elt{g});
  }
  for (const auto& [b, members] : part.classes) report.partition_sizes[b] = members.size();
  report.is_constant = part.value_count() == 1;
  if (ctx.size() <= kDirectionPairCap || force_directions)
    report.direction_count = direction_set_size(ctx, tt, true);

  const std::uint64_t size = ctx.size();
  const std::uint64_t ph_size = report.ph.size();
  const std::uint64_t bound = ph_upper_bound(ctx);
  const bool odd_prime_q = ctx.k() == 1 && ctx.p() != 2;

  report.bound_ok = report.is_constant || ph_size <= bound;
  report.gap_ok = !(odd_prime_q && 2 * ph_size >= size + 1 && ph_size < bound);
  if (!report.is_constant) {
    report.linear_witness = detect_linearity(ctx, tt);
    report.linearity_ok = (ph_size == bound) == report.linear_witness.has_value();
    if (odd_prime_q && 2 * ph_size >= size + 1) report.large_ph_linear_ok = report.linear_witness.has_value();
  }
  return report;
}

bool frobenius_closure_check(const FieldCtx& ctx, const SparsePoly& h, std::uint32_t t, const PHReport& report) {
  if (!coeffs_in_subfield(ctx, h, t))
    throw Error(ErrorCode::HypothesisViolated, "H has coefficients outside F_{p^t}");
  return std::all_of(report.ph_complement.begin(), report.ph_complement.end(), [&](Elt a) {
    return std::binary_search(report.ph_complement.begin(), report.ph_complement.end(), ctx.frob_p_power(a, t));
  });
}

}  // namespace permtrace
