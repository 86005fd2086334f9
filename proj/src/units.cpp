#include "qedv/units.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qedv::units {

namespace {

double hbar_J_s(const UnitSystem& u) {
  return u.compton_time_s * u.electron_rest_energy_eV * codata2018::elementary_charge_C;
}

double momentum_scale(const UnitSystem& u) { return hbar_J_s(u) / u.compton_length_m; }

double vector_potential_scale(const UnitSystem& u) {
  const double c = codata2018::speed_of_light_m_s;
  const double m = momentum_scale(u) / c;
  return std::sqrt(m * m * c * c * c / hbar_J_s(u));
}

}  // namespace

void UnitSystem::validate() const {
  if (!(electron_rest_energy_eV > 0.0) || !(compton_time_s > 0.0) || !(compton_length_m > 0.0) ||
      !(fine_structure_default > 0.0)) {
    throw std::invalid_argument("UnitSystem: all constants must be strictly positive");
  }
}

const UnitSystem& codata() {
  static const UnitSystem system{codata2018::electron_rest_energy_eV, codata2018::natural_time_s,
                                 codata2018::natural_length_m, codata2018::fine_structure};
  return system;
}

double time_to_si(double t_d, const UnitSystem& u) { return t_d * u.compton_time_s; }
double time_from_si(double t_s, const UnitSystem& u) { return t_s / u.compton_time_s; }

double energy_to_ev(double e_d, const UnitSystem& u) { return e_d * u.electron_rest_energy_eV; }
double energy_from_ev(double e_ev, const UnitSystem& u) { return e_ev / u.electron_rest_energy_eV; }

double length_to_si(double x_d, const UnitSystem& u) { return x_d * u.compton_length_m; }
double length_from_si(double x_m, const UnitSystem& u) { return x_m / u.compton_length_m; }

double momentum_to_si(double p_d, const UnitSystem& u) { return p_d * momentum_scale(u); }
double momentum_from_si(double p_si, const UnitSystem& u) { return p_si / momentum_scale(u); }

double rate_to_si(double gamma_d, const UnitSystem& u) { return gamma_d / u.compton_time_s; }
double rate_from_si(double gamma_per_s, const UnitSystem& u) { return gamma_per_s * u.compton_time_s; }

double wavefunction_to_si(double psi_d, const UnitSystem& u) {
  return psi_d * std::pow(u.compton_length_m, -1.5);
}
double wavefunction_from_si(double psi_si, const UnitSystem& u) {
  return psi_si * std::pow(u.compton_length_m, 1.5);
}

double vector_potential_to_si(double a_d, const UnitSystem& u) { return a_d * vector_potential_scale(u); }
double vector_potential_from_si(double a_si, const UnitSystem& u) {
  return a_si / vector_potential_scale(u);
}

std::string reference_table(const UnitSystem& u) {
  std::string out;
  char line[160];
  auto row = [&](const char* name, double value, const char* unit) {
    std::snprintf(line, sizeof line, "%-34s %.9e %s\n", name, value, unit);
    out += line;
  };
  row("electron rest energy m_e c^2", u.electron_rest_energy_eV, "eV");
  row("time unit hbar/(m_e c^2)", u.compton_time_s, "s");
  row("length unit hbar/(m_e c)", u.compton_length_m, "m");
  row("momentum unit m_e c", momentum_scale(u), "kg m/s");
  row("reduced Planck constant (derived)", hbar_J_s(u), "J s");
  row("wavefunction unit", std::pow(u.compton_length_m, -1.5), "m^-3/2");
  row("vector potential unit", vector_potential_scale(u), "sqrt(kg m/s^2)");
  row("fine-structure constant (default)", u.fine_structure_default, "");
  return out;
}

}  // namespace qedv::units
