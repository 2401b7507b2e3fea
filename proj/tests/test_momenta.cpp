#include "doctest.h"

#include "ising/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

using namespace ising;

TEST_CASE("positive-sector momenta are odd multiples of pi/N") {
    auto g4 = momentum_grid(4, ParitySector::Positive);
    REQUIRE(g4.size() == 2);
    CHECK(g4.momentum(0) == doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(g4.momentum(1) == doctest::Approx(3 * pi / 4).epsilon(1e-15));
    CHECK_FALSE(g4.unpaired(0));
    CHECK_FALSE(g4.unpaired(1));

    auto g2 = momentum_grid(2, ParitySector::Positive);
    REQUIRE(g2.size() == 1);
    CHECK(g2.momentum(0) == doctest::Approx(pi / 2).epsilon(1e-15));

    // Odd N: k = pi itself appears (multiple N is odd).
    auto g5 = momentum_grid(5, ParitySector::Positive);
    REQUIRE(g5.size() == 3);
    CHECK(g5.multiples == std::vector<int>{1, 3, 5});
    CHECK(g5.unpaired(2));
}

TEST_CASE("negative-sector momenta are even multiples of pi/N") {
    auto g3 = momentum_grid(3, ParitySector::Negative);
    REQUIRE(g3.size() == 2);
    CHECK(g3.momentum(0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g3.momentum(1) == doctest::Approx(2 * pi / 3).epsilon(1e-15));
    CHECK(g3.unpaired(0));
    CHECK_FALSE(g3.unpaired(1));

    // Even N: both k = 0 and k = pi are present.
    auto g6 = momentum_grid(6, ParitySector::Negative);
    REQUIRE(g6.size() == 4);
    CHECK(g6.multiples == std::vector<int>{0, 2, 4, 6});
    CHECK(g6.unpaired(0));
    CHECK(g6.unpaired(3));
}

TEST_CASE("sector sizes and Brillouin-zone tiling") {
    for (int n = 2; n <= 41; ++n) {
        auto pos = momentum_grid(n, ParitySector::Positive);
        auto neg = momentum_grid(n, ParitySector::Negative);
        CHECK(pos.size() == static_cast<std::size_t>((n + 1) / 2));
        if (n % 2 == 0)
            CHECK(neg.size() == static_cast<std::size_t>(n / 2 + 1));
        else
            CHECK(neg.size() == static_cast<std::size_t>((n + 1) / 2));

        // Together the two sectors use every multiple 0..N exactly once.
        std::set<int> all;
        for (int m : pos.multiples) {
            CHECK(m % 2 == 1);
            all.insert(m);
        }
        for (int m : neg.multiples) {
            CHECK(m % 2 == 0);
            all.insert(m);
        }
        CHECK(all.size() == pos.size() + neg.size());
        CHECK(*all.begin() == 0);
        CHECK(*all.rbegin() == n);

        // Grids are increasing.
        CHECK(std::is_sorted(pos.multiples.begin(), pos.multiples.end()));
        CHECK(std::is_sorted(neg.multiples.begin(), neg.multiples.end()));
    }
    CHECK_THROWS_AS(momentum_grid(1, ParitySector::Positive),
                    std::domain_error);
}

TEST_CASE("Bogoliubov angle: closed points and normalization") {
    // g = 0, k = pi/2: Lambda = 1, theta = pi/2 rotated: sin = 1, cos = -0? ->
    // cos_theta = (0 - cos(pi/2)) / 1 = 0, sin_theta = 1.
    auto a = bogoliubov_angle(0.0, pi / 2);
    CHECK(a.sin_theta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.cos_theta == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(a.energy == doctest::Approx(2.0).epsilon(1e-15));

    // Deep paramagnet at k = 0: theta = 0.
    auto b = bogoliubov_angle(2.0, 0.0);
    CHECK(b.sin_theta == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(b.cos_theta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.energy == doctest::Approx(2.0).epsilon(1e-15));

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> gdist(-3.0, 3.0), kdist(0.0, pi);
    for (int i = 0; i < 10000; ++i) {
        double g = gdist(rng), k = kdist(rng);
        ModeAngle m = bogoliubov_angle(g, k);
        double norm = m.sin_theta * m.sin_theta + m.cos_theta * m.cos_theta;
        CHECK(std::abs(norm - 1.0) <= 1e-14);
        CHECK(m.energy ==
              doctest::Approx(2 * std::sqrt(g * g - 2 * g * std::cos(k) + 1))
                  .epsilon(1e-13));
        CHECK(m.energy > 0.0);
    }

    CHECK_THROWS_AS(bogoliubov_angle(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bogoliubov_angle(-1.0, pi), std::domain_error);
}

TEST_CASE("correlation length convention 1/|ln|g||") {
    CHECK(correlation_length(std::exp(1.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(correlation_length(std::exp(-1.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(correlation_length(0.99) == doctest::Approx(99.4992).epsilon(1e-5));
    CHECK(correlation_length(-0.99) ==
          doctest::Approx(correlation_length(0.99)).epsilon(1e-15));
    CHECK_THROWS_AS(correlation_length(1.0), std::domain_error);
    CHECK_THROWS_AS(correlation_length(-1.0), std::domain_error);
    CHECK_THROWS_AS(correlation_length(0.0), std::domain_error);
}

TEST_CASE("ground-state parity sector") {
    for (int n : {2, 4, 6, 10})
        for (double g : {-2.0, -0.5, 0.0, 0.5, 2.0})
            CHECK(ground_state_parity(g, n) == ParitySector::Positive);
    for (int n : {3, 5, 9}) {
        CHECK(ground_state_parity(0.7, n) == ParitySector::Positive);
        CHECK(ground_state_parity(2.0, n) == ParitySector::Positive);
        CHECK(ground_state_parity(-0.7, n) == ParitySector::Negative);
        CHECK(ground_state_parity(-2.0, n) == ParitySector::Negative);
        CHECK_THROWS_AS(ground_state_parity(0.0, n), std::domain_error);
    }
}

TEST_CASE("sector ground energies reduce to the unpaired-mode rules") {
    for (int n : {3, 4, 5, 8, 9, 12})
        for (double g : {-2.5, -1.0, -0.4, 0.4, 1.0, 2.5}) {
            for (auto sector :
                 {ParitySector::Positive, ParitySector::Negative}) {
                auto grid = momentum_grid(n, sector);
                double interior = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    if (grid.unpaired(i)) continue;
                    interior += bogoliubov_angle(g, grid.momentum(i)).energy;
                }
                double expected;
                if (sector == ParitySector::Positive)
                    expected = (n % 2 == 0) ? -interior : -interior - (g + 1);
                else
                    expected = (n % 2 == 0) ? -interior - 2.0
                                            : -interior + (g - 1);
                double got = sector_ground_energy(g, n, sector);
                CHECK(std::abs(got - expected) <=
                      1e-12 * std::max(1.0, std::abs(expected)));
            }
        }
}

TEST_CASE("negative sector never undercuts the positive one") {
    for (int n : {2, 4, 6, 8})
        for (double g : {0.2, 0.8, 1.0, 1.6, 3.0}) {
            double ep = sector_ground_energy(g, n, ParitySector::Positive);
            double em = sector_ground_energy(g, n, ParitySector::Negative);
            CHECK(em >= ep - 1e-12);
        }
}
