#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qcoh/errors.hpp"
#include "qcoh/states.hpp"
#include "test_util.hpp"

using namespace qcoh;
using test::max_diff;

TEST_CASE("bloch construction") {
  SUBCASE("north pole is |0><0|") {
    const DensityMatrix rho = density_from_bloch({0.0, 0.0, 1.0});
    CHECK(rho(0, 0).real() == doctest::Approx(1.0));
    CHECK(rho(1, 1).real() == doctest::Approx(0.0));
  }
  SUBCASE("origin is maximally mixed") {
    const DensityMatrix rho = density_from_bloch({0.0, 0.0, 0.0});
    CHECK(rho(0, 0).real() == doctest::Approx(0.5));
    CHECK(std::abs(rho(0, 1)) < 1e-15);
  }
  SUBCASE("pure vectors give eigenvalues 0 and 1") {
    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
      double c[3], nrm = 0.0;
      for (auto& ci : c) {
        ci = rng.normal();
        nrm += ci * ci;
      }
      nrm = std::sqrt(nrm);
      const DensityMatrix rho =
          density_from_bloch({c[0] / nrm, c[1] / nrm, c[2] / nrm});
      const Spectrum s = eigh(rho.hermitian());
      CHECK(std::abs(s.eigenvalues[0]) < 1e-10);
      CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("eigenvalues are (1 +- |c|)/2") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      const double r = rng.uniform();
      double c[3], nrm = 0.0;
      for (auto& ci : c) {
        ci = rng.normal();
        nrm += ci * ci;
      }
      nrm = std::sqrt(nrm) / r;
      const DensityMatrix rho =
          density_from_bloch({c[0] / nrm, c[1] / nrm, c[2] / nrm});
      const Spectrum s = eigh(rho.hermitian());
      CHECK(s.eigenvalues[0] == doctest::Approx((1.0 - r) / 2).epsilon(1e-10));
      CHECK(s.eigenvalues[1] == doctest::Approx((1.0 + r) / 2).epsilon(1e-10));
    }
  }
  SUBCASE("vectors outside the ball are rejected") {
    CHECK_THROWS_AS(density_from_bloch({1.0, 1.0, 0.0}), DomainError);
  }
}

TEST_CASE("maximally coherent states") {
  SUBCASE("flat phases give all entries 1/d") {
    for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
      const DensityMatrix rho = maximally_coherent(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          CHECK(rho(i, j).real() == doctest::Approx(1.0 / d).epsilon(1e-12));
    }
  }
  SUBCASE("phases (0, pi) give the minus state") {
    const DensityMatrix rho = maximally_coherent(2, {0.0, std::numbers::pi});
    CHECK(rho(0, 0).real() == doctest::Approx(0.5));
    CHECK(rho(0, 1).real() == doctest::Approx(-0.5));
    CHECK(rho(1, 0).real() == doctest::Approx(-0.5));
    CHECK(rho(1, 1).real() == doctest::Approx(0.5));
  }
  SUBCASE("phase count must match d") {
    CHECK_THROWS_AS(maximally_coherent(3, {0.0}), DimensionError);
  }
}

TEST_CASE("random densities") {
  SUBCASE("rank-1 draws are pure") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DensityMatrix rho = random_density(2, 1, seed);
      CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("full-rank draws have positive spectrum") {
    const DensityMatrix rho = random_density(4, 4, 99);
    const Spectrum s = eigh(rho.hermitian());
    CHECK(s.eigenvalues.front() > 0.0);
  }
  SUBCASE("same seed gives bitwise identical matrices") {
    const DensityMatrix a = random_density(3, 2, 42);
    const DensityMatrix b = random_density(3, 2, 42);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(a(i, j).real() == b(i, j).real());
        CHECK(a(i, j).imag() == b(i, j).imag());
      }
  }
  SUBCASE("rank out of range") {
    CHECK_THROWS_AS(random_density(2, 3, 0), DomainError);
    CHECK_THROWS_AS(random_density(2, 0, 0), DomainError);
  }
}

TEST_CASE("incoherence predicate and dephasing") {
  CHECK(is_incoherent(test::diag_density({0.2, 0.8}), 1e-9));
  CHECK_FALSE(is_incoherent(maximally_coherent(2), 1e-9));
  const DensityMatrix rho = random_density(3, 3, 5);
  CHECK_FALSE(is_incoherent(rho, 1e-9));
  CHECK(is_incoherent(dephase(rho).embed(), 1e-9));
}

TEST_CASE("block diagonal composition") {
  const DensityMatrix rho1 = random_density(2, 2, 1);
  const DensityMatrix rho2 = random_density(2, 2, 2);
  SUBCASE("p = 1 keeps only the first block") {
    const DensityMatrix b = block_diag(1.0, rho1, rho2);
    CHECK(b.dim() == 4);
    CHECK(b(0, 0).real() == doctest::Approx(rho1(0, 0).real()));
    CHECK(std::abs(b(2, 2)) < 1e-15);
  }
  SUBCASE("p = 0 keeps only the second block") {
    const DensityMatrix b = block_diag(0.0, rho1, rho2);
    CHECK(std::abs(b(0, 0)) < 1e-15);
    CHECK(b(2, 2).real() == doctest::Approx(rho2(0, 0).real()));
  }
  SUBCASE("off blocks vanish") {
    const DensityMatrix b = block_diag(0.5, rho1, rho2);
    CHECK(b.hermitian().trace() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 2; j < 4; ++j) CHECK(std::abs(b(i, j)) == 0.0);
  }
  SUBCASE("p outside [0,1]") {
    CHECK_THROWS_AS(block_diag(1.5, rho1, rho2), DomainError);
  }
}

TEST_CASE("diagonal state invariants") {
  CHECK_THROWS_AS(DiagonalState::from({0.5, -0.1, 0.6}), ValidationError);
  CHECK_THROWS_AS(DiagonalState::from({0.5, 0.6}), ValidationError);
  const DiagonalState u = DiagonalState::uniform(4);
  CHECK(u[0] == doctest::Approx(0.25));
}

TEST_CASE("state files round-trip and validate") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qcoh_state_test";
  fs::create_directories(dir);

  SUBCASE("round trip") {
    const DensityMatrix rho = random_density(3, 3, 77);
    const std::string path = (dir / "rho.json").string();
    save_state_json(rho, path);
    const DensityMatrix back = load_state_json(path);
    CHECK(max_diff(back.hermitian(), rho.hermitian()) < 1e-12);
  }
  SUBCASE("malformed file is a format error") {
    const std::string path = (dir / "broken.json").string();
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_state_json(path), FileFormatError);
    CHECK_THROWS_AS(load_state_json((dir / "missing.json").string()), FileFormatError);
    std::ofstream(path) << "{\"dim\": 2, \"re\": [[1,0]], \"im\": [[0,0]]}";
    CHECK_THROWS_AS(load_state_json(path), FileFormatError);
  }
  SUBCASE("well-formed file with a non-density matrix is a validation error") {
    const std::string path = (dir / "trace2.json").string();
    std::ofstream(path)
        << "{\"dim\": 2, \"re\": [[1,0],[0,1]], \"im\": [[0,0],[0,0]]}";
    CHECK_THROWS_AS(load_state_json(path), ValidationError);
  }
}
