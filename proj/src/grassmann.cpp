#include "skron/grassmann.hpp"

#include <array>

namespace skron {

std::string to_string(Generator g) {
  static constexpr std::array<const char*, kGeneratorCount> names = {
      "zeta1", "zeta2", "zeta3", "mu1", "mu2", "omega"};
  return names[static_cast<std::size_t>(g)];
}

std::string to_string(Monomial m) {
  if (m.mask() == 0) return "1";
  std::string out;
  for (int g = 0; g < kGeneratorCount; ++g) {
    if (!m.contains(static_cast<Generator>(g))) continue;
    if (!out.empty()) out += "*";
    out += to_string(static_cast<Generator>(g));
  }
  return out;
}

ScalarElement gexp(const ScalarElement& a) {
  const cplx body = a.coeff(Monomial{});
  ScalarElement nil;
  for (const auto& [m, c] : a.terms()) {
    if (m.mask() == 0) continue;
    if (m.degree() % 2 != 0)
      throw OddBodyUnsupported("gexp: nilpotent part has odd monomial " + to_string(m));
    nil.accumulate(m, c);
  }
  ScalarElement sum = ScalarElement::constant(1.0);
  ScalarElement power = sum;
  for (int j = 1; j <= kGeneratorCount / 2; ++j) {
    power = gscale(cplx{1.0 / j}, gmul(power, nil));
    if (power.is_zero()) break;
    sum += power;
  }
  return gscale(std::exp(body), sum);
}

}  // namespace skron
