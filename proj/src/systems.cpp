#include "psds/systems.hpp"

namespace psds {

SystemClass system_class(const SystemSpec& spec) {
  if (std::holds_alternative<ImpactingSystem>(spec)) return SystemClass::Impacting;
  if (std::holds_alternative<FilippovSystem>(spec)) return SystemClass::Filippov;
  return SystemClass::Sweeping;
}

const char* to_string(SystemClass c) {
  switch (c) {
    case SystemClass::Impacting: return "impacting";
    case SystemClass::Filippov: return "filippov";
    case SystemClass::Sweeping: return "sweeping";
  }
  return "unknown";
}

const VectorField2& minus_field(const SystemSpec& spec) {
  return std::visit(
      [](const auto& sys) -> const VectorField2& {
        using T = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<T, FilippovSystem>) {
          return sys.field_minus;
        } else {
          return sys.field;
        }
      },
      spec);
}

const SwitchingSurface& surface_of(const SystemSpec& spec) {
  return std::visit([](const auto& sys) -> const SwitchingSurface& { return sys.surface; },
                    spec);
}

Vec2 reset_derivative_at_zero(const ImpactingSystem& sys) {
  const Vec2 at_zero = sys.reset(0.0);
  auto slope = [&](double d) { return (sys.reset(d) - at_zero) / d; };
  // One-sided differences carry an O(d) error term; two nodes with ratio 10
  // cancel it: (10 D(h/10) - D(h)) / 9.
  const Vec2 d1 = slope(1e-3);
  const Vec2 d2 = slope(1e-4);
  const Vec2 richardson = (d2 * 10.0 - d1) / 9.0;
  if (sys.reset_u_derivative) return {*sys.reset_u_derivative, richardson.y};
  return richardson;
}

}  // namespace psds
