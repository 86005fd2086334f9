#pragma once

// Conversions between the dimensionless system used throughout the library
// and SI / eV. Energies are measured in m_e c^2, times in hbar/(m_e c^2),
// lengths in hbar/(m_e c), momenta in m_e c. The fine-structure constant is
// the only coupling that survives.

#include <string>

namespace qedv::units {

/// CODATA 2018 values. Exact SI-defining constants are given in full.
namespace codata2018 {
inline constexpr double speed_of_light_m_s = 299792458.0;
inline constexpr double elementary_charge_C = 1.602176634e-19;
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double hbar_eV_s = 6.582119569e-16;
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double electron_rest_energy_eV = 510998.950;
inline constexpr double natural_time_s = 1.28808866819e-21;      // hbar/(m_e c^2)
inline constexpr double natural_length_m = 3.8615926796e-13;     // hbar/(m_e c)
inline constexpr double natural_momentum_kg_m_s = 2.73092453075e-22;  // m_e c
inline constexpr double fine_structure = 1.0 / 137.035999;
}  // namespace codata2018

struct UnitSystem {
  double electron_rest_energy_eV;
  double compton_time_s;
  double compton_length_m;
  double fine_structure_default;

  /// Throws std::invalid_argument if any constant is not strictly positive.
  void validate() const;
};

const UnitSystem& codata();

double time_to_si(double t_d, const UnitSystem& u = codata());
double time_from_si(double t_s, const UnitSystem& u = codata());

double energy_to_ev(double e_d, const UnitSystem& u = codata());
double energy_from_ev(double e_ev, const UnitSystem& u = codata());

double length_to_si(double x_d, const UnitSystem& u = codata());
double length_from_si(double x_m, const UnitSystem& u = codata());

/// Momentum in kg m/s. m_e c is derived as hbar / compton_length.
double momentum_to_si(double p_d, const UnitSystem& u = codata());
double momentum_from_si(double p_si, const UnitSystem& u = codata());

/// Rates (inverse dimensionless time) to 1/s.
double rate_to_si(double gamma_d, const UnitSystem& u = codata());
double rate_from_si(double gamma_per_s, const UnitSystem& u = codata());

/// Wavefunction amplitude in m^{-3/2}.
double wavefunction_to_si(double psi_d, const UnitSystem& u = codata());
double wavefunction_from_si(double psi_si, const UnitSystem& u = codata());

/// Vector potential scale sqrt(m_e^2 c^3 / hbar).
double vector_potential_to_si(double a_d, const UnitSystem& u = codata());
double vector_potential_from_si(double a_si, const UnitSystem& u = codata());

/// Human-readable table of the pinned constants and derived scale factors.
std::string reference_table(const UnitSystem& u = codata());

}  // namespace qedv::units
