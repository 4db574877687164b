#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pathclust/dataset.hpp"
#include "pathclust/rng.hpp"

#include "oracles.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

using namespace pathclust;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
}

}  // namespace

TEST_CASE("load_csv parses a plain numeric table") {
    const auto path = write_temp("plain.csv", "1,2\n3,4\n5,6");
    LoadOptions opts;
    opts.has_header = false;
    const DataMatrix d = load_csv(path, opts);
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 2);
    CHECK(d.values(0, 0) == 1.0);
    CHECK(d.values(2, 1) == 6.0);
    CHECK_FALSE(d.ground_truth.has_value());
}

TEST_CASE("load_csv strips a label column into ground truth") {
    const auto path = write_temp("labeled.csv", "a,b,cls\n1,2,x\n3,4,y\n5,6,x\n");
    LoadOptions opts;
    opts.label_column = std::string("cls");
    const DataMatrix d = load_csv(path, opts);
    CHECK(d.cols() == 2);
    REQUIRE(d.ground_truth.has_value());
    CHECK(*d.ground_truth == std::vector<int>{0, 1, 0});
    CHECK(d.column_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("load_csv reads the iris file") {
    LoadOptions opts;
    opts.label_column = std::string("species");
    const DataMatrix iris = load_csv(std::string(PATHCLUST_DATA_DIR) + "/iris.csv", opts);
    CHECK(iris.rows() == 150);
    CHECK(iris.cols() == 4);
    REQUIRE(iris.ground_truth.has_value());
    const std::set<int> distinct(iris.ground_truth->begin(), iris.ground_truth->end());
    CHECK(distinct.size() == 3);
}

TEST_CASE("load_csv error paths") {
    SUBCASE("non-numeric cell names the offending row and column") {
        const auto path = write_temp("bad_cell.csv", "1,2\n3,oops\n");
        LoadOptions opts;
        opts.has_header = false;
        CHECK_THROWS_WITH_AS(load_csv(path, opts),
                             doctest::Contains("row 2, column 2"), std::runtime_error);
    }
    SUBCASE("ragged rows are rejected") {
        const auto path = write_temp("ragged.csv", "1,2\n3\n");
        LoadOptions opts;
        opts.has_header = false;
        CHECK_THROWS_WITH_AS(load_csv(path, opts), doctest::Contains("row 2"),
                             std::runtime_error);
    }
    SUBCASE("empty file is rejected") {
        const auto path = write_temp("empty.csv", "");
        LoadOptions opts;
        opts.has_header = false;
        CHECK_THROWS_WITH_AS(load_csv(path, opts), doctest::Contains("empty"),
                             std::runtime_error);
    }
    SUBCASE("NaN and Inf cells are rejected") {
        const auto path = write_temp("nonfinite.csv", "1,2\nnan,4\n");
        LoadOptions opts;
        opts.has_header = false;
        CHECK_THROWS_AS(load_csv(path, opts), std::runtime_error);
    }
}

TEST_CASE("load_csv handles quoted fields and CRLF") {
    const auto path = write_temp("quoted.csv", "\"col,1\",c2\r\n1,2\r\n3,4\r\n");
    const DataMatrix d = load_csv(path);
    CHECK(d.column_names[0] == "col,1");
    CHECK(d.rows() == 2);
}

TEST_CASE("csv round-trips exactly for finite decimal inputs") {
    Rng rng(21);
    DataMatrix d;
    d.values.resize(17, 3);
    for (Index i = 0; i < d.rows(); ++i)
        for (Index j = 0; j < d.cols(); ++j)
            d.values(i, j) = std::round(rng.uniform(-1000, 1000) * 1e4) / 1e4;
    d.column_names = {"a", "b", "c"};

    const auto path = write_temp("roundtrip.csv", "");
    write_csv(d, path);
    const DataMatrix back = load_csv(path);
    REQUIRE(back.rows() == d.rows());
    REQUIRE(back.cols() == d.cols());
    CHECK((back.values - d.values).cwiseAbs().maxCoeff() == 0.0);

    // and once more through the writer: byte-identical files
    const auto path2 = write_temp("roundtrip2.csv", "");
    write_csv(back, path2);
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    const std::string s1((std::istreambuf_iterator<char>(f1)), {});
    const std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
}

TEST_CASE("standardize") {
    SUBCASE("two-point column maps to -1, 1") {
        DataMatrix d;
        d.values.resize(2, 1);
        d.values << 1, 3;
        const DataMatrix z = standardize(d);
        CHECK(z.values(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(z.values(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant column becomes zeros") {
        DataMatrix d;
        d.values.resize(3, 1);
        d.values << 5, 5, 5;
        const DataMatrix z = standardize(d);
        CHECK(z.values.col(0).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("population sigma on [2,4,6]") {
        DataMatrix d;
        d.values.resize(3, 1);
        d.values << 2, 4, 6;
        const DataMatrix z = standardize(d);
        // hand oracle: mean 4, sigma_pop = sqrt(8/3)
        const double sigma = std::sqrt(8.0 / 3.0);
        CHECK(z.values(0, 0) == doctest::Approx(-2.0 / sigma).epsilon(1e-12));
        CHECK(z.values(1, 0) == doctest::Approx(0.0));
        CHECK(z.values(2, 0) == doctest::Approx(2.0 / sigma).epsilon(1e-12));
        CHECK(z.values(2, 0) == doctest::Approx(1.2247448713915890).epsilon(1e-9));
    }
    SUBCASE("idempotent within 1e-9 on non-degenerate columns") {
        Rng rng(5);
        DataMatrix d;
        d.values.resize(40, 4);
        for (Index i = 0; i < d.rows(); ++i)
            for (Index j = 0; j < d.cols(); ++j) d.values(i, j) = rng.normal(3.0, 7.0);
        const DataMatrix once = standardize(d);
        const DataMatrix twice = standardize(once);
        CHECK((twice.values - once.values).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("polynomial_lift") {
    SUBCASE("k=2 degree=2 row (a,b) -> (1, a, b, a^2, ab, b^2)") {
        DataMatrix d;
        d.values.resize(2, 2);
        d.values << 2, 3, -1, 4;
        const DataMatrix lifted = polynomial_lift(d, 2);
        REQUIRE(lifted.cols() == 6);
        const double a = 2, b = 3;
        CHECK(lifted.values(0, 0) == 1.0);
        CHECK(lifted.values(0, 1) == a);
        CHECK(lifted.values(0, 2) == b);
        CHECK(lifted.values(0, 3) == a * a);
        CHECK(lifted.values(0, 4) == a * b);
        CHECK(lifted.values(0, 5) == b * b);
    }
    SUBCASE("iris-shaped lift: k=4 degree=2 -> 15 columns") {
        DataMatrix d;
        d.values = Matrix::Random(3, 4);
        CHECK(polynomial_lift(d, 2).cols() == 15);
    }
    SUBCASE("degree=1 keeps the original columns plus a constant") {
        DataMatrix d;
        d.values.resize(2, 3);
        d.values << 1, 2, 3, 4, 5, 6;
        const DataMatrix lifted = polynomial_lift(d, 1);
        REQUIRE(lifted.cols() == 4);
        CHECK(lifted.values(1, 0) == 1.0);
        CHECK(lifted.values(1, 1) == 4.0);
        CHECK(lifted.values(1, 3) == 6.0);
    }
    SUBCASE("column count matches brute-force monomial enumeration, k<=6 d<=3") {
        for (int k = 1; k <= 6; ++k) {
            for (int deg = 1; deg <= 3; ++deg) {
                DataMatrix d;
                d.values = Matrix::Random(2, k);
                CHECK(polynomial_lift(d, deg, 100000).cols() == oracle::count_monomials(k, deg));
            }
        }
    }
    SUBCASE("cap on lifted dimensionality") {
        DataMatrix d;
        d.values = Matrix::Random(2, 30);
        CHECK_THROWS_AS(polynomial_lift(d, 3, 100), std::invalid_argument);
    }
    SUBCASE("ground truth is carried through") {
        DataMatrix d;
        d.values = Matrix::Random(3, 2);
        d.ground_truth = std::vector<int>{0, 1, 0};
        CHECK(polynomial_lift(d, 2).ground_truth == d.ground_truth);
    }
}
