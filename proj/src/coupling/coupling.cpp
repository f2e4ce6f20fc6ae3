#include "tlsom/coupling.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <string_view>

#include "tlsom/error.hpp"
#include "tlsom/units.hpp"

namespace tlsom {

namespace {

constexpr std::string_view kHeader = "x,y,z,dV,Sxx,Syy,Szz,Syz,Sxz,Sxy,Txx,Tyy,Tzz,Tyz,Txz,Txy";
constexpr int kColumns = 16;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

struct MaterialTokens {
  std::optional<double> e, nu, rho;
};

void scan_material(std::string_view comment, MaterialTokens& out, int line) {
  std::istringstream in{std::string(comment)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    if (key != "E" && key != "nu" && key != "rho") continue;
    const auto value = to_double(std::string_view(token).substr(eq + 1));
    if (!value)
      throw ParseError(ParseError::Kind::missing_material, "unreadable material value '" + token + "'", line);
    if (key == "E") out.e = value;
    if (key == "nu") out.nu = value;
    if (key == "rho") out.rho = value;
  }
}

}  // namespace

double contract(const SymTensor& a, const SymTensor& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5]);
}

double StrainField::total_volume() const {
  double v = 0.0;
  for (const auto& s : samples) v += s.volume;
  return v;
}

double StrainField::max_strain_contraction() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, contract(s.strain, s.strain));
  return m;
}

StrainField parse_strain_field(const std::string& text) {
  StrainField field;
  MaterialTokens material;
  bool header_seen = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto content = trim(raw);
    if (content.empty()) continue;
    if (content.front() == '#') {
      scan_material(content.substr(1), material, line);
      continue;
    }
    if (!header_seen) {
      if (content != kHeader)
        throw ParseError(ParseError::Kind::missing_header, "expected header '" + std::string(kHeader) + "'", line);
      header_seen = true;
      continue;
    }
    std::array<double, kColumns> v{};
    int col = 0;
    std::string_view rest = content;
    while (true) {
      const auto comma = rest.find(',');
      const auto cell = rest.substr(0, comma);
      if (col >= kColumns) throw ParseError(ParseError::Kind::malformed_row, "malformed row: too many columns", line);
      const auto value = to_double(cell);
      if (!value || !std::isfinite(*value))
        throw ParseError(ParseError::Kind::malformed_row, "malformed row: bad number '" + std::string(trim(cell)) + "'",
                         line);
      v[col++] = *value;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (col != kColumns) throw ParseError(ParseError::Kind::malformed_row, "malformed row: too few columns", line);
    if (!(v[3] > 0.0)) throw ParseError(ParseError::Kind::nonpositive_volume, "non-positive volume weight", line);
    StrainSample s;
    s.position = {v[0], v[1], v[2]};
    s.volume = v[3];
    for (int k = 0; k < 6; ++k) {
      s.strain[k] = v[4 + k];
      s.stress[k] = v[10 + k];
    }
    field.samples.push_back(s);
  }
  if (!material.e || !material.nu || !material.rho)
    throw ParseError(ParseError::Kind::missing_material, "missing material block '# E=<Pa> nu=<..> rho=<kg/m3>'");
  if (!(*material.e > 0.0)) throw ParseError(ParseError::Kind::missing_material, "Young's modulus must be positive");
  if (!header_seen) throw ParseError(ParseError::Kind::missing_header, "missing column header");
  if (field.samples.empty()) throw ParseError(ParseError::Kind::empty, "field contains no samples");
  field.material = {*material.e, *material.nu, *material.rho};
  return field;
}

StrainField load_strain_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseError::Kind::io, "cannot open strain field '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_strain_field(buffer.str());
}

std::string format_strain_field(const StrainField& field) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# E=" << field.material.youngs_modulus << " nu=" << field.material.poisson_ratio
      << " rho=" << field.material.density << "\n";
  out << kHeader << "\n";
  for (const auto& s : field.samples) {
    out << s.position[0] << ',' << s.position[1] << ',' << s.position[2] << ',' << s.volume;
    for (double x : s.strain) out << ',' << x;
    for (double x : s.stress) out << ',' << x;
    out << "\n";
  }
  return out.str();
}

ModeVolume mode_volume(const StrainField& field) {
  if (field.samples.empty()) throw DomainError("mode_volume: empty field");
  ModeVolume mv;
  // Fixed-order accumulation keeps the result reproducible.
  for (std::size_t i = 0; i < field.samples.size(); ++i) {
    const auto& s = field.samples[i];
    mv.energy_integral += contract(s.stress, s.strain) * s.volume;
    const double c = contract(s.strain, s.strain);
    if (c > mv.max_contraction) {
      mv.max_contraction = c;
      mv.max_index = i;
    }
  }
  if (!(mv.max_contraction > 0.0)) throw DomainError("degenerate mode");
  mv.max_position = field.samples[mv.max_index].position;
  mv.volume = mv.energy_integral / (field.material.youngs_modulus * mv.max_contraction);
  return mv;
}

double zero_point_strain(double omega_m_si, double youngs_modulus, double mode_volume) {
  if (!(omega_m_si > 0.0 && youngs_modulus > 0.0 && mode_volume > 0.0))
    throw DomainError("zero_point_strain: inputs must be positive");
  return std::sqrt(units::hbar * omega_m_si / (2.0 * youngs_modulus * mode_volume));
}

double TLSParams::splitting() const { return std::hypot(asymmetry, tunnel_splitting); }

double tls_coupling(const TLSParams& tls, double zpf) {
  const double split = tls.splitting();
  if (!(split > 0.0)) throw DomainError("tls_coupling: Delta_T must be positive");
  return tls.deformation_potential / units::hbar * (tls.tunnel_splitting / split) * zpf;
}

double tls_count(double lambda_max, double volume, double spectral_density, double u0) {
  if (!(u0 > 0.0 && u0 < 1.0)) throw DomainError("tls_count: u0 must lie in (0, 1)");
  return units::hbar * lambda_max * volume * spectral_density * (0.5 * std::numbers::pi - std::asin(u0));
}

TuningShifts electric_tuning(const TLSParams& tls, const Vec3& field, double coupling) {
  const double pe = tls.dipole[0] * field[0] + tls.dipole[1] * field[1] + tls.dipole[2] * field[2];
  const double split = tls.splitting();
  TuningShifts t;
  t.asymmetry = 2.0 * pe / units::hbar;
  if (split > 0.0) {
    t.splitting = 2.0 * (tls.asymmetry / split) * pe / units::hbar;
    t.coupling = -2.0 * coupling * (tls.asymmetry / (split * split)) * pe / units::hbar;
  }
  return t;
}

}  // namespace tlsom
