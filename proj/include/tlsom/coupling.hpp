#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace tlsom {

using Vec3 = std::array<double, 3>;

/// Symmetric tensor stored as (xx, yy, zz, yz, xz, xy).
using SymTensor = std::array<double, 6>;

/// Full contraction A_ij B_ij of two symmetric tensors (off-diagonals count twice).
double contract(const SymTensor& a, const SymTensor& b);

struct Material {
  double youngs_modulus = 0.0;  ///< E [Pa]
  double poisson_ratio = 0.0;
  double density = 0.0;         ///< [kg/m^3]
};

inline constexpr double kSiliconYoungsModulus = 170e9;
inline constexpr double kSilicaYoungsModulus = 73e9;

struct StrainSample {
  Vec3 position{};   ///< [m]
  double volume = 0.0;  ///< dV [m^3]
  SymTensor strain{};   ///< dimensionless
  SymTensor stress{};   ///< [Pa]
};

/// Discretized elastic mode profile exported from a finite-element solver.
struct StrainField {
  std::vector<StrainSample> samples;
  Material material;

  double total_volume() const;
  double max_strain_contraction() const;
};

/// Reads the CSV export format: comment line `# E=<Pa> nu=<..> rho=<kg/m3>`,
/// then the header `x,y,z,dV,Sxx,Syy,Szz,Syz,Sxz,Sxy,Txx,Tyy,Tzz,Tyz,Txz,Txy`
/// and one row per sample. Throws ParseError with a distinct kind for each
/// failure.
StrainField load_strain_field(const std::filesystem::path& path);
StrainField parse_strain_field(const std::string& text);

/// Writes `field` in the format read by load_strain_field.
std::string format_strain_field(const StrainField& field);

struct ModeVolume {
  double volume = 0.0;     ///< V_m [m^3]
  double energy_integral = 0.0;  ///< sum T_ij S_ij dV [J]
  double max_contraction = 0.0;  ///< S_kl S_kl at x0
  std::size_t max_index = 0;
  Vec3 max_position{};
};

/// V_m = sum(T_ij S_ij dV) / (E max_x S_kl S_kl). Ties for x0 go to the lowest
/// sample index. Throws DomainError("degenerate mode") for a zero strain field.
ModeVolume mode_volume(const StrainField& field);

/// S_zpf = sqrt(hbar omega_m / (2 E V_m)), SI inputs.
double zero_point_strain(double omega_m_si, double youngs_modulus, double mode_volume);

/// Defect parameters in SI units (angular frequencies in rad/s).
struct TLSParams {
  double tunnel_splitting = 0.0;      ///< Delta_0
  double asymmetry = 0.0;             ///< Delta
  double deformation_potential = 0.0; ///< D_T [J]
  Vec3 dipole{};                      ///< p [C m]
  double spectral_density = 1e45;     ///< P-bar [1/(J m^3)]
  double volume = 0.0;                ///< V_T [m^3]

  double splitting() const;  ///< Delta_T = sqrt(Delta^2 + Delta_0^2)
  double mixing() const { return tunnel_splitting / splitting(); }  ///< Delta_0 / Delta_T
};

/// lambda = (D_T / hbar) (Delta_0 / Delta_T) S_zpf [rad/s]; orientation factors set to one.
double tls_coupling(const TLSParams& tls, double zero_point_strain);

/// N_T = hbar lambda_max V_T P (pi/2 - asin u0), for 0 < u0 < 1.
double tls_count(double lambda_max, double volume, double spectral_density, double u0);

struct TuningShifts {
  double asymmetry = 0.0;  ///< delta Delta [rad/s]
  double splitting = 0.0;  ///< delta Delta_T [rad/s]
  double coupling = 0.0;   ///< delta lambda [rad/s]
};

/// First-order shifts from a static field `field` [V/m]; `coupling` is the
/// unperturbed lambda the relative coupling shift applies to.
TuningShifts electric_tuning(const TLSParams& tls, const Vec3& field, double coupling);

}  // namespace tlsom
