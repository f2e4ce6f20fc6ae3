// Mode volume, zero-point strain, coupling, TLS counting and field tuning.
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "tlsom/coupling.hpp"
#include "tlsom/error.hpp"
#include "tlsom/units.hpp"

using namespace tlsom;

namespace {

constexpr double kE = 170e9;

StrainField uniaxial_bar(int n, double length, double s0, bool sine) {
  StrainField f;
  f.material = {kE, 0.28, 2330.0};
  const double dx = length / n;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * dx;
    const double s = sine ? s0 * std::sin(std::numbers::pi * x / length) : s0;
    StrainSample smp;
    smp.position = {x, 0.0, 0.0};
    smp.volume = dx * 1e-12;
    smp.strain = {s, 0, 0, 0, 0, 0};
    smp.stress = {kE * s, 0, 0, 0, 0, 0};
    f.samples.push_back(smp);
  }
  return f;
}

// 9-component reference contraction.
double contract_full(const SymTensor& a, const SymTensor& b) {
  auto full = [](const SymTensor& t) {
    std::array<std::array<double, 3>, 3> m{};
    m[0][0] = t[0], m[1][1] = t[1], m[2][2] = t[2];
    m[1][2] = m[2][1] = t[3];
    m[0][2] = m[2][0] = t[4];
    m[0][1] = m[1][0] = t[5];
    return m;
  };
  const auto fa = full(a), fb = full(b);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += fa[i][j] * fb[i][j];
  return s;
}

ParseError::Kind parse_kind(const std::string& text) {
  try {
    parse_strain_field(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseError::Kind::io;
}

const std::string kHead = "# E=170e9 nu=0.28 rho=2330\nx,y,z,dV,Sxx,Syy,Szz,Syz,Sxz,Sxy,Txx,Tyy,Tzz,Tyz,Txz,Txy\n";

}  // namespace

TEST_CASE("contraction counts off-diagonals twice") {
  const SymTensor a{1.0, -2.0, 0.5, 0.3, -0.7, 1.1};
  const SymTensor b{0.2, 0.9, -1.4, 2.0, 0.4, -0.6};
  CHECK(contract(a, b) == doctest::Approx(contract_full(a, b)).epsilon(1e-15));
  CHECK(contract(a, a) == doctest::Approx(contract_full(a, a)).epsilon(1e-15));
}

TEST_CASE("uniform field gives the total volume") {
  const auto f = uniaxial_bar(50, 1e-6, 1e-3, false);
  const auto mv = mode_volume(f);
  CHECK(mv.volume == doctest::Approx(f.total_volume()).epsilon(1e-12));
  CHECK(mv.max_index == 0);  // every sample ties
}

TEST_CASE("sine bar gives half the volume") {
  const auto f = uniaxial_bar(2000, 1e-6, 1e-3, true);
  CHECK(mode_volume(f).volume == doctest::Approx(0.5 * f.total_volume()).epsilon(1e-5));
  // Independent of the amplitude.
  const auto g = uniaxial_bar(2000, 1e-6, 7e-2, true);
  CHECK(mode_volume(g).volume == doctest::Approx(mode_volume(f).volume).epsilon(1e-12));
}

TEST_CASE("degenerate field") {
  auto f = uniaxial_bar(4, 1e-6, 0.0, false);
  CHECK_THROWS_AS(mode_volume(f), DomainError);
  CHECK_THROWS_AS(mode_volume(StrainField{}), DomainError);
}

TEST_CASE("field file parsing") {
  const std::string row = "0,0,0,1e-18,1,1,1,1,1,1,1,1,1,1,1,1\n";
  const auto f = parse_strain_field(kHead + row);
  CHECK(f.samples.size() == 1);
  CHECK(f.material.youngs_modulus == 170e9);
  CHECK(f.max_strain_contraction() == doctest::Approx(9.0));
  CHECK(f.total_volume() == doctest::Approx(1e-18));

  CHECK(parse_kind(kHead + "0,0,0,0,1,1,1,1,1,1,1,1,1,1,1,1\n") == ParseError::Kind::nonpositive_volume);
  CHECK(parse_kind(kHead + "0,0,0,1,1,1\n") == ParseError::Kind::malformed_row);
  CHECK(parse_kind(kHead + "0,0,0,1,x,1,1,1,1,1,1,1,1,1,1,1\n") == ParseError::Kind::malformed_row);
  CHECK(parse_kind(kHead.substr(kHead.find('\n') + 1) + row) == ParseError::Kind::missing_material);
  CHECK(parse_kind("# E=1 nu=0 rho=1\n" + row) == ParseError::Kind::missing_header);
  CHECK(parse_kind(kHead) == ParseError::Kind::empty);

  try {
    parse_strain_field(kHead + "0,0,0,-1,1,1,1,1,1,1,1,1,1,1,1,1\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("non-positive volume weight") != std::string::npos);
    CHECK(e.line() == 3);
  }

  const auto path = std::filesystem::temp_directory_path() / "tlsom_field_roundtrip.csv";
  const auto bar = uniaxial_bar(16, 1e-6, 1e-3, true);
  std::ofstream(path) << format_strain_field(bar);
  const auto back = load_strain_field(path);
  std::filesystem::remove(path);
  REQUIRE(back.samples.size() == bar.samples.size());
  CHECK(mode_volume(back).volume == doctest::Approx(mode_volume(bar).volume).epsilon(1e-15));
  try {
    load_strain_field("/nonexistent/field.csv");
    FAIL("expected failure");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::io);
  }
}

TEST_CASE("zero-point strain") {
  const double w = units::angular(5e9);
  const double s = zero_point_strain(w, kE, 0.01e-18);
  CHECK(s == doctest::Approx(std::sqrt(1.054571817e-34 * w / (2 * kE * 1e-20))).epsilon(1e-14));
  CHECK(s == doctest::Approx(3.12e-8).epsilon(5e-3));
  CHECK(zero_point_strain(w, kE, 0.04e-18) == doctest::Approx(s / 2).epsilon(1e-14));
  CHECK(zero_point_strain(4 * w, kE, 0.01e-18) == doctest::Approx(2 * s).epsilon(1e-14));
  CHECK_THROWS_AS(zero_point_strain(w, 0.0, 1.0), DomainError);
}

TEST_CASE("coupling from the deformation potential") {
  TLSParams t;
  t.tunnel_splitting = units::angular(5e9);
  t.deformation_potential = 1.4 * units::electron_volt;
  const double s = zero_point_strain(units::angular(5e9), kE, 0.01e-18);
  const double lmax = tls_coupling(t, s);
  CHECK(lmax == doctest::Approx(t.deformation_potential / units::hbar * s).epsilon(1e-14));
  CHECK(units::hertz(lmax) == doctest::Approx(10.76e6).epsilon(0.10));

  // Delta0 / Delta_T = 1/2 at fixed Delta_T halves lambda.
  TLSParams h = t;
  h.tunnel_splitting = 0.5 * t.tunnel_splitting;
  h.asymmetry = std::sqrt(0.75) * t.tunnel_splitting;
  CHECK(tls_coupling(h, s) == doctest::Approx(0.5 * lmax).epsilon(1e-12));
  TLSParams neg = h;
  neg.asymmetry = -h.asymmetry;
  CHECK(tls_coupling(neg, s) == tls_coupling(h, s));
  TLSParams sym = t;
  sym.tunnel_splitting = 1e-9 * t.tunnel_splitting;
  sym.asymmetry = t.tunnel_splitting;
  CHECK(tls_coupling(sym, s) < 1e-8 * lmax);
}

TEST_CASE("relevant TLS count") {
  const double lmax = units::angular(0.13e6);
  const double vt = 13.46e-18;
  const double n = tls_count(lmax, vt, 1e45, 0.7);
  const double prefactor = std::numbers::pi / 2 - std::asin(0.7);
  CHECK(prefactor == doctest::Approx(0.7954).epsilon(1e-3));
  CHECK(n == doctest::Approx(units::hbar * lmax * vt * 1e45 * prefactor).epsilon(1e-14));
  CHECK(n == doctest::Approx(0.93).epsilon(0.05));
  CHECK(tls_count(lmax, vt, 1e45, 1.0 - 1e-12) < 1e-5 * n);
  CHECK(tls_count(lmax, vt, 1e45, 0.8) < n);
  CHECK(tls_count(2 * lmax, vt, 1e45, 0.7) == doctest::Approx(2 * n));
  CHECK(tls_count(lmax, 3 * vt, 1e45, 0.7) == doctest::Approx(3 * n));
  CHECK(tls_count(lmax, vt, 5e45, 0.7) == doctest::Approx(5 * n));
  CHECK_THROWS_AS(tls_count(lmax, vt, 1e45, 1.0), DomainError);
  CHECK_THROWS_AS(tls_count(lmax, vt, 1e45, 0.0), DomainError);
}

TEST_CASE("electric-field tuning") {
  TLSParams t;
  t.tunnel_splitting = 0.9 * units::angular(5e9);
  t.asymmetry = std::sqrt(1 - 0.81) * units::angular(5e9);
  t.dipole = {0.5 * units::debye, 0, 0};
  const double lambda = units::angular(1e6);
  const auto sh = electric_tuning(t, {1e3, 0, 0}, lambda);
  const double pe = 0.5 * units::debye * 1e3;
  const double dt = t.splitting();
  CHECK(sh.asymmetry == doctest::Approx(2 * pe / units::hbar).epsilon(1e-14));
  CHECK(sh.splitting == doctest::Approx(2 * (t.asymmetry / dt) * pe / units::hbar).epsilon(1e-14));
  CHECK(sh.coupling == doctest::Approx(-2 * lambda * t.asymmetry / (dt * dt) * pe / units::hbar).epsilon(1e-14));
  CHECK(units::hertz(sh.splitting) == doctest::Approx(2.2e6).epsilon(0.01));

  const auto perp = electric_tuning(t, {0, 1e3, 0}, lambda);
  CHECK(perp.asymmetry == 0.0);
  CHECK(perp.splitting == 0.0);
  CHECK(perp.coupling == 0.0);
  TLSParams s = t;
  s.asymmetry = 0.0;
  const auto sym = electric_tuning(s, {1e3, 0, 0}, lambda);
  CHECK(sym.splitting == 0.0);
  CHECK(sym.coupling == 0.0);
  CHECK(sym.asymmetry != 0.0);
}
