#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pathclust/dataset.hpp"
#include "pathclust/geometry.hpp"
#include "pathclust/rng.hpp"

#include "oracles.hpp"

#include <numeric>
#include <set>

using namespace pathclust;

namespace {

Matrix random_points(Index p, Index k, std::uint64_t seed, double scale = 1.0) {
    Rng rng(seed);
    Matrix x(p, k);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < k; ++j) x(i, j) = scale * rng.normal();
    return x;
}

}  // namespace

TEST_CASE("gram_matrix") {
    SUBCASE("orthonormal rows") {
        Matrix x(2, 2);
        x << 1, 0, 0, 1;
        const Matrix g = gram_matrix(x);
        CHECK(g(0, 0) == 1.0);
        CHECK(g(0, 1) == 0.0);
        CHECK(g(1, 1) == 1.0);
    }
    SUBCASE("hand inner products") {
        Matrix x(2, 2);
        x << 1, 2, 3, 4;
        const Matrix g = gram_matrix(x);
        CHECK(g(0, 0) == 5.0);
        CHECK(g(0, 1) == 11.0);
        CHECK(g(1, 0) == 11.0);
        CHECK(g(1, 1) == 25.0);
    }
    SUBCASE("single row") {
        Matrix x(1, 2);
        x << 2, 2;
        const Matrix g = gram_matrix(x);
        REQUIRE(g.rows() == 1);
        CHECK(g(0, 0) == 8.0);
    }
    SUBCASE("exactly symmetric on random input") {
        const Matrix x = random_points(40, 7, 11);
        const Matrix g = gram_matrix(x);
        CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("distance_matrix") {
    SUBCASE("3-4-5 triangle") {
        Matrix x(2, 2);
        x << 0, 0, 3, 4;
        const DistanceMatrix d = distance_matrix(gram_matrix(x));
        CHECK(d.d(0, 1) == doctest::Approx(5.0).epsilon(1e-12));
    }
    SUBCASE("identical rows give zero") {
        Matrix x(3, 2);
        x << 1, 2, 1, 2, 1, 2;
        const DistanceMatrix d = distance_matrix(gram_matrix(x));
        CHECK(d.d.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("rows (1,2) and (4,6)") {
        Matrix x(2, 2);
        x << 1, 2, 4, 6;
        const DistanceMatrix d = distance_matrix(gram_matrix(x));
        CHECK(d.d(0, 1) == doctest::Approx(5.0).epsilon(1e-12));  // direct sqrt(9+16)
    }
    SUBCASE("matches direct pairwise distances within 1e-7 relative") {
        const Matrix x = random_points(60, 5, 3, 10.0);
        const DistanceMatrix d = distance_matrix(gram_matrix(x));
        for (Index i = 0; i < x.rows(); ++i)
            for (Index j = 0; j < x.rows(); ++j) {
                const double direct = oracle::direct_distance(x, i, j);
                CHECK(d.d(i, j) == doctest::Approx(direct).epsilon(1e-7));
            }
    }
    SUBCASE("symmetric, zero diagonal, nonnegative") {
        const Matrix x = random_points(30, 4, 9);
        const DistanceMatrix d = distance_matrix(gram_matrix(x));
        CHECK(d.d.diagonal().cwiseAbs().maxCoeff() == 0.0);
        CHECK(d.d.minCoeff() >= 0.0);
        CHECK((d.d - d.d.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("triangle inequality on sampled triples") {
        const Matrix x = random_points(25, 6, 17);
        const DistanceMatrix d = distance_matrix(gram_matrix(x));
        Rng rng(4);
        for (int trial = 0; trial < 500; ++trial) {
            const Index a = rng.uniform_int(0, 24);
            const Index b = rng.uniform_int(0, 24);
            const Index c = rng.uniform_int(0, 24);
            CHECK(d.d(a, c) <= d.d(a, b) + d.d(b, c) + 1e-7);
        }
    }
}

TEST_CASE("select_start") {
    SUBCASE("1-D points {0, 1, 10}: row sums {11, 10, 19}") {
        Matrix x(3, 1);
        x << 0, 1, 10;
        CHECK(select_start(distance_matrix(gram_matrix(x))) == 1);
        CHECK(select_start(x) == 1);
    }
    SUBCASE("two identical points tie to index 0") {
        Matrix x(2, 2);
        x << 3, 3, 3, 3;
        CHECK(select_start(distance_matrix(gram_matrix(x))) == 0);
    }
    SUBCASE("equilateral triangle ties to index 0") {
        // basis vectors: all pairwise distances are exactly sqrt(2)
        Matrix x = Matrix::Identity(3, 3);
        CHECK(select_start(distance_matrix(gram_matrix(x))) == 0);
        CHECK(select_start(x) == 0);
    }
}

TEST_CASE("build_path") {
    SUBCASE("1-D points {0, 1, 3, 7} from 0") {
        Matrix x(4, 1);
        x << 0, 1, 3, 7;
        const HamiltonianPath path = build_path(x, 0);
        CHECK(path.order == std::vector<Index>{0, 1, 2, 3});
        REQUIRE(path.gaps.size() == 3);
        CHECK(path.gaps[0] == doctest::Approx(1.0));
        CHECK(path.gaps[1] == doctest::Approx(2.0));
        CHECK(path.gaps[2] == doctest::Approx(4.0));
    }
    SUBCASE("p=2 forced path") {
        Matrix x(2, 2);
        x << 0, 0, 3, 4;
        const HamiltonianPath path = build_path(x, 1);
        CHECK(path.order == std::vector<Index>{1, 0});
        CHECK(path.gaps[0] == doctest::Approx(5.0));
    }
    SUBCASE("exact distance tie goes to the lower index") {
        Matrix x(3, 1);
        x << 0, 1, -1;  // rows 1 and 2 both at distance 1 from row 0
        const HamiltonianPath path = build_path(x, 0);
        CHECK(path.order == std::vector<Index>{0, 1, 2});
    }
    SUBCASE("duplicate rows are visited immediately as zero gaps") {
        Matrix x(4, 1);
        x << 5, 5, 0, 9;
        const HamiltonianPath path = build_path(x, 0);
        CHECK(path.order[1] == 1);
        CHECK(path.gaps[0] == 0.0);
    }
    SUBCASE("order is always a permutation") {
        const Matrix x = random_points(80, 3, 23);
        const HamiltonianPath path = build_path(x, select_start(x));
        std::set<Index> seen(path.order.begin(), path.order.end());
        CHECK(seen.size() == 80);
        CHECK(*seen.begin() == 0);
        CHECK(*seen.rbegin() == 79);
    }
    SUBCASE("matches the independent greedy oracle") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const Matrix x = random_points(50, 4, seed);
            const HamiltonianPath path = build_path(x, 7);
            CHECK(path.order == oracle::greedy_order(x, 7));
        }
    }
    SUBCASE("per-step greedy optimality, brute force") {
        const Matrix x = random_points(120, 5, 31);
        const HamiltonianPath path = build_path(x, 0);
        std::vector<bool> visited(120, false);
        visited[0] = true;
        for (std::size_t step = 0; step + 1 < path.order.size(); ++step) {
            const Index current = path.order[step];
            for (Index v = 0; v < 120; ++v) {
                if (visited[static_cast<std::size_t>(v)]) continue;
                CHECK(path.gaps[static_cast<Index>(step)] <=
                      oracle::direct_distance(x, current, v) + 1e-9);
            }
            visited[static_cast<std::size_t>(path.order[step + 1])] = true;
        }
    }
    SUBCASE("gaps recompute from the data within 1e-9") {
        const Matrix x = random_points(40, 6, 13);
        const HamiltonianPath path = build_path(x, 3);
        for (std::size_t i = 0; i + 1 < path.order.size(); ++i) {
            const double d = oracle::direct_distance(x, path.order[i], path.order[i + 1]);
            CHECK(path.gaps[static_cast<Index>(i)] == doctest::Approx(d).epsilon(1e-9));
        }
    }
}

TEST_CASE("build_path_streaming equals build_path") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Matrix x = random_points(90, 4, seed + 100);
        const Index start = seed % 90;
        const HamiltonianPath a = build_path(x, start);
        const HamiltonianPath b = build_path_streaming(x, start);
        CHECK(a.order == b.order);
        CHECK((a.gaps - b.gaps).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("p=2") {
        Matrix x(2, 1);
        x << 0, 4;
        CHECK(build_path(x, 0).order == build_path_streaming(x, 0).order);
    }
}

TEST_CASE("translation invariance") {
    const Matrix x = random_points(50, 3, 77);
    Matrix shifted = x;
    shifted.rowwise() += Eigen::RowVector3d(100.0, -40.0, 7.5);

    const Index s1 = select_start(x);
    const Index s2 = select_start(shifted);
    CHECK(s1 == s2);

    const HamiltonianPath p1 = build_path(x, s1);
    const HamiltonianPath p2 = build_path(shifted, s2);
    CHECK(p1.order == p2.order);
    CHECK((p1.gaps - p2.gaps).cwiseAbs().maxCoeff() < 1e-9);

    const DistanceMatrix d1 = distance_matrix(gram_matrix(x));
    const DistanceMatrix d2 = distance_matrix(gram_matrix(shifted));
    CHECK((d1.d - d2.d).cwiseAbs().maxCoeff() < 1e-7);
}
