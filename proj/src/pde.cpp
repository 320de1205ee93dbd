#include "cauchyls/pde.hpp"

#include "cauchyls/detail/bvp_system.hpp"

namespace cauchyls {

Coefficient Coefficient::constant(double value) {
  if (!(value > 0.0)) throw InvalidArgument("constant coefficient must be positive");
  return Coefficient{[value](double, double) { return value; }, value};
}

const BoundaryCondition& BvpSpec::condition(BoundaryPart part) const {
  switch (part) {
    case BoundaryPart::Gamma1: return gamma1;
    case BoundaryPart::Gamma2: return gamma2;
    case BoundaryPart::Gamma3: return gamma3;
  }
  return gamma1;
}

namespace {

std::span<const double> data_of(const BvpSpec& spec, BoundaryPart part) {
  const auto& bc = spec.condition(part);
  if (bc.data.values.empty()) return {};
  check_trace(spec.grid, bc.data, part);
  return bc.data.values;
}

}  // namespace

Field solve_mixed_bvp(const BvpSpec& spec) {
  if (spec.source && !(spec.source->grid == spec.grid)) {
    throw InvalidArgument("source field lives on a different grid");
  }
  const detail::BcKinds kinds{spec.gamma1.kind, spec.gamma2.kind, spec.gamma3.kind};
  const detail::BvpSystem<double> system(spec.grid, spec.coefficient, kinds);
  const detail::PartValues<double> data{data_of(spec, BoundaryPart::Gamma1),
                                        data_of(spec, BoundaryPart::Gamma2),
                                        data_of(spec, BoundaryPart::Gamma3)};
  std::span<const double> source;
  if (spec.source) source = spec.source->values;
  Field u(spec.grid);
  u.values = system.solve(data, source);
  return u;
}

TraceFn neumann_trace(const Field& u, const Coefficient& a, BoundaryPart part) {
  if (u.values.size() != u.grid.node_count()) throw InvalidArgument("field size mismatch");
  return TraceFn{part, u.grid.part_spacing(part),
                 detail::conormal_trace<double>(u.grid, a, u.values, part)};
}

TraceFn neumann_trace(const Field& u, const BvpSpec& spec, BoundaryPart part) {
  const auto& bc = spec.condition(part);
  if (bc.kind == BcKind::Neumann) {
    if (bc.data.values.empty()) return zero_trace(spec.grid, part);
    return bc.data;
  }
  return neumann_trace(u, spec.coefficient, part);
}

}  // namespace cauchyls
