// SPDX-License-Identifier: Apache-2.0
#include "cellsim/parameters.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "cellsim/constants.hpp"
#include "cellsim/errors.hpp"

namespace cellsim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("parameter check failed: " + what);
}

void validate_electrode(const ElectrodeParameters& e, const char* name) {
  std::string n{name};
  require(e.thickness > 0, n + " thickness > 0");
  require(e.active_fraction > 0 && e.active_fraction < 1, n + " active fraction in (0,1)");
  require(e.porosity > 0 && e.porosity < 1, n + " porosity in (0,1)");
  require(e.active_fraction + e.porosity <= 1.0, n + " solid + pore fractions <= 1");
  require(e.rate_constant > 0, n + " rate constant > 0");
  require(e.film_resistance >= 0, n + " film resistance >= 0");
  const std::size_t nr = e.radii.size();
  require(nr >= 1, n + " needs at least one particle size class");
  require(e.fractions.size() == nr && e.diffusivities.size() == nr && e.c_maxes.size() == nr,
          n + " size-class vectors have equal length");
  double fsum = 0.0;
  for (std::size_t i = 0; i < nr; ++i) {
    require(e.radii[i] > 0, n + " particle radius > 0");
    require(e.fractions[i] > 0, n + " size fraction > 0");
    require(e.diffusivities[i] > 0, n + " solid diffusivity > 0");
    require(e.c_maxes[i] > 0, n + " saturation concentration > 0");
    fsum += e.fractions[i];
  }
  require(std::abs(fsum - 1.0) <= 1e-12, n + " size fractions sum to 1");
  require(!e.ocp.empty(), n + " OCP table present");
  require(!e.entropy.empty(), n + " entropy table present");
}

}  // namespace

double CellParameters::derived_capacity_Ah() const {
  // Mean saturation concentration weighted by size fractions.
  double cmax = 0.0;
  for (int i = 0; i < neg.size_classes(); ++i)
    cmax += neg.fractions[static_cast<std::size_t>(i)] *
            neg.c_maxes[static_cast<std::size_t>(i)];
  double dx = neg.stoich_soc100 - neg.stoich_soc0;
  return kFaraday * area * neg.thickness * neg.active_fraction * cmax * dx / 3600.0;
}

void CellParameters::validate() const {
  validate_electrode(neg, "negative electrode");
  validate_electrode(pos, "positive electrode");
  require(separator_thickness > 0, "separator thickness > 0");
  require(separator_porosity > 0 && separator_porosity < 1, "separator porosity in (0,1)");
  require(area > 0, "electrode area > 0");
  require(capacity_Ah > 0, "nominal capacity > 0");
  require(alpha_a > 0 && alpha_c > 0, "transfer coefficients > 0");
  require(plating_exchange_current > 0, "plating exchange current > 0");
  require(radial_shells >= 4, "at least 4 radial shells");
  require(electrolyte_cells >= 4, "at least 4 electrolyte cells per region");

  require(elec.c_init > 0, "electrolyte concentration > 0");
  require(elec.diffusivity > 0, "electrolyte diffusivity > 0");
  require(elec.conductivity > 0, "electrolyte conductivity > 0");
  require(elec.transference > 0 && elec.transference < 1, "transference number in (0,1)");
  require(elec.thermo_factor > 0, "thermodynamic factor > 0");
  require(elec.bruggeman > 0, "Bruggeman exponent > 0");

  require(thermal.heat_capacity_area > 0, "areal heat capacity > 0");
  require(thermal.h_conv >= 0, "heat transfer coefficient >= 0");
  require(thermal.t_ambient > 0, "ambient temperature > 0 K");

  require(neg.stoich_soc100 > neg.stoich_soc0, "negative stoichiometry rises with SOC");
  require(pos.stoich_soc100 < pos.stoich_soc0, "positive stoichiometry falls with SOC");
  require(neg.stoich_soc0 >= 0 && neg.stoich_soc100 <= 1, "negative stoichiometry in [0,1]");
  require(pos.stoich_soc100 >= 0 && pos.stoich_soc0 <= 1, "positive stoichiometry in [0,1]");

  // The capacity used for C rates must match the stoichiometry window, or
  // coulomb counting and SOC would drift apart.
  double derived = derived_capacity_Ah();
  if (std::abs(derived - capacity_Ah) > 5e-3 * capacity_Ah) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "capacity mismatch: nominal %.4f Ah vs %.4f Ah implied by the "
                  "negative electrode stoichiometry window",
                  capacity_Ah, derived);
    throw ConfigError(msg);
  }
}

}  // namespace cellsim
