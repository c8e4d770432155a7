#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <uiobank/linmath.hpp>

#include <cmath>
#include <random>

using namespace uiobank;

namespace {

// Oracle: closed-form solution of the scalar unit-weight Riccati equation
// p^2 - a^2 p - 1 = 0 and its gain k = b p a / (1 + b^2 p) for b = 1.
double scalar_riccati_p(double a) { return (a * a + std::sqrt(a * a * a * a + 4.0)) / 2.0; }
double scalar_riccati_k(double a) {
    double p = scalar_riccati_p(a);
    return p * a / (1.0 + p);
}

Matrix random_matrix(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(gen);
    return m;
}

Matrix example1_a() {
    Matrix a(2, 2);
    a << 0.2, 0.5, 0.2, 0.7;
    return a;
}

Matrix example1_c() {
    Matrix c(3, 2);
    c << 1, 3, 1, 1, 3, 2;
    return c;
}

Matrix example5_a() {
    Matrix a(3, 3);
    a << 1.5, 0, 0.1, 0.2, 0.7, 0, 1, 0, 0.3;
    return a;
}

}  // namespace

TEST_CASE("pinv: rank-one column matches the v'/|v|^2 formula") {
    // CB for the 2-state benchmark system: C*[1;2] = [7;3;7], |v|^2 = 107.
    Matrix cb(3, 1);
    cb << 7, 3, 7;
    Matrix got = pinv(cb);
    REQUIRE(got.rows() == 1);
    REQUIRE(got.cols() == 3);
    CHECK(got(0, 0) == doctest::Approx(7.0 / 107.0).epsilon(1e-12));
    CHECK(got(0, 1) == doctest::Approx(3.0 / 107.0).epsilon(1e-12));
    CHECK(got(0, 2) == doctest::Approx(7.0 / 107.0).epsilon(1e-12));
}

TEST_CASE("pinv: left inverse of [1;2] is [0.2 0.4]") {
    Matrix b(2, 1);
    b << 1, 2;
    Matrix bp = pinv(b);
    CHECK(bp(0, 0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(bp(0, 1) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(((bp * b) - Matrix::Identity(1, 1)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pinv: zero matrix maps to its zero transpose") {
    Matrix z = Matrix::Zero(2, 3);
    Matrix zp = pinv(z);
    REQUIRE(zp.rows() == 3);
    REQUIRE(zp.cols() == 2);
    CHECK(zp.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pinv: Moore-Penrose identities on random matrices") {
    std::mt19937_64 gen(7u);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Index rows = 1 + static_cast<Eigen::Index>(gen() % 5);
        Eigen::Index cols = 1 + static_cast<Eigen::Index>(gen() % 5);
        Matrix m = random_matrix(gen, rows, cols, 2.0);
        Matrix mp = pinv(m);
        CHECK((m * mp * m - m).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((mp * m * mp - mp).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(((m * mp) - (m * mp).transpose()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(((mp * m) - (mp * m).transpose()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("pinv: non-finite entries are rejected") {
    Matrix m(1, 1);
    m << std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(pinv(m), InvalidMatrixError);
}

TEST_CASE("rank_of: hand-reduced cases") {
    Matrix c(2, 3);
    c << 1, 2, 0, 2, 1, 3;  // independent rows
    CHECK(rank_of(c) == 2);

    Matrix d(2, 2);
    d << 1, 2, 2, 4;  // second row is twice the first
    CHECK(rank_of(d) == 1);

    CHECK(rank_of(Matrix::Zero(3, 2)) == 0);
    CHECK(rank_of(Matrix::Identity(3, 3)) == 3);
}

TEST_CASE("rank_of: cutoff is relative to the largest singular value") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-11;  // below the default 1e-10 relative cutoff
    CHECK(rank_of(m) == 1);
    m(1, 1) = 1e-9;
    CHECK(rank_of(m) == 2);
}

TEST_CASE("spectral_radius and is_schur on the benchmark state matrices") {
    // eigs of the 2-state system: (0.9 +- sqrt(0.65))/2
    double rho1 = (0.9 + std::sqrt(0.65)) / 2.0;
    CHECK(spectral_radius(example1_a()) == doctest::Approx(rho1).epsilon(1e-12));
    CHECK(is_schur(example1_a()));

    // eigs of the unstable 3-state system: 0.7 and (1.8 +- sqrt(1.84))/2
    double rho5 = (1.8 + std::sqrt(1.84)) / 2.0;
    CHECK(spectral_radius(example5_a()) == doctest::Approx(rho5).epsilon(1e-12));
    CHECK_FALSE(is_schur(example5_a()));
}

TEST_CASE("is_schur: margin semantics around the unit circle") {
    Matrix m = Matrix::Identity(2, 2);
    CHECK_FALSE(is_schur(m));  // modulus 1 violates the margin
    m *= 1.0 - 2e-9;           // strictly inside by more than the margin
    CHECK(is_schur(m));
    Matrix r(1, 2);
    CHECK_THROWS_AS(is_schur(r), DimensionError);
}

TEST_CASE("is_detectable: PBH hand cases") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 0.5;
    a(1, 1) = 2.0;
    Matrix c(1, 2);
    c << 1, 0;  // sees only the stable state
    CHECK_FALSE(is_detectable(a, c));

    Matrix a2 = Matrix::Zero(2, 2);
    a2(0, 0) = 2.0;
    a2(1, 1) = 0.5;
    CHECK(is_detectable(a2, c));  // unstable state observed, stable one excused

    // Schur state matrix: vacuously detectable for any C, even zero.
    CHECK(is_detectable(example1_a(), Matrix::Zero(1, 2)));
    CHECK(is_detectable(example1_a(), example1_c()));
}

TEST_CASE("is_detectable: complex eigenvalue pair") {
    Matrix a(2, 2);
    a << 0, 1.2, -1.2, 0;  // eigenvalues +-1.2i
    Matrix c(1, 2);
    c << 1, 0;
    CHECK(is_detectable(a, c));
    CHECK_FALSE(is_detectable(a, Matrix::Zero(1, 2)));
}

TEST_CASE("is_stabilizable: PBH hand cases") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 0.5;
    Matrix b1(2, 1), b2(2, 1);
    b1 << 1, 0;
    b2 << 0, 1;
    CHECK(is_stabilizable(a, b1));       // actuates the unstable state
    CHECK_FALSE(is_stabilizable(a, b2)); // unstable state unreachable
    CHECK(is_stabilizable(a, Matrix::Identity(2, 2)));
}

TEST_CASE("is_stabilizable: unstable 3-state system through single columns") {
    Matrix a = example5_a();
    Matrix b(3, 3);
    b << 1, 1, 1, 0, 1, 0, 0, 0, 1;
    for (int j = 0; j < 3; ++j) CHECK(is_stabilizable(a, b.col(j)));
    CHECK(is_stabilizable(a, b));
}

TEST_CASE("dimension mismatches are reported") {
    Matrix a = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(is_detectable(a, Matrix::Zero(1, 3)), DimensionError);
    CHECK_THROWS_AS(is_stabilizable(a, Matrix::Zero(3, 1)), DimensionError);
    CHECK_THROWS_AS(observer_gain(Matrix::Zero(2, 3), Matrix::Zero(1, 2)), DimensionError);
    CHECK_THROWS_AS(lqr_gain(a, Matrix::Zero(1, 1)), DimensionError);
}

TEST_CASE("lqr_gain: scalar closed form") {
    Matrix a(1, 1), b(1, 1);
    a << 2.0;
    b << 1.0;
    Matrix k = lqr_gain(a, b);
    // p = 2 + sqrt(5), k = 2p/(1+p) = (1+sqrt(5))/2
    CHECK(k(0, 0) == doctest::Approx(scalar_riccati_k(2.0)).epsilon(1e-9));
    CHECK(k(0, 0) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-9));
    CHECK(std::abs(a(0, 0) - b(0, 0) * k(0, 0)) < 1.0);
}

TEST_CASE("observer_gain: scalar closed form via duality") {
    Matrix f(1, 1), h(1, 1);
    f << 0.5;
    h << 1.0;
    Matrix k = observer_gain(f, h);
    CHECK(k(0, 0) == doctest::Approx(scalar_riccati_k(0.5)).epsilon(1e-9));
    CHECK(std::abs(f(0, 0) - k(0, 0) * h(0, 0)) < 1.0);
}

TEST_CASE("lqr_gain: closed loop is Schur on random stabilizable pairs") {
    std::mt19937_64 gen(11u);
    int accepted = 0;
    while (accepted < 40) {
        Eigen::Index n = 1 + static_cast<Eigen::Index>(gen() % 4);
        Eigen::Index p = 1 + static_cast<Eigen::Index>(gen() % 3);
        Matrix a = random_matrix(gen, n, n, 1.0);
        Matrix b = random_matrix(gen, n, p, 1.0);
        if (!is_stabilizable(a, b)) continue;
        ++accepted;
        Matrix k = lqr_gain(a, b);
        REQUIRE(k.rows() == p);
        REQUIRE(k.cols() == n);
        CHECK(is_schur(a - b * k));
    }
}

TEST_CASE("observer_gain: observer matrix is Schur on random detectable pairs") {
    std::mt19937_64 gen(13u);
    int accepted = 0;
    while (accepted < 40) {
        Eigen::Index n = 1 + static_cast<Eigen::Index>(gen() % 4);
        Eigen::Index m = 1 + static_cast<Eigen::Index>(gen() % 3);
        Matrix f = random_matrix(gen, n, n, 1.0);
        Matrix h = random_matrix(gen, m, n, 1.0);
        if (!is_detectable(f, h)) continue;
        ++accepted;
        Matrix k = observer_gain(f, h);
        REQUIRE(k.rows() == n);
        REQUIRE(k.cols() == m);
        CHECK(is_schur(f - k * h));
    }
}

TEST_CASE("gain synthesis rejects infeasible pairs") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 0.5;
    Matrix b(2, 1);
    b << 0, 1;
    CHECK_THROWS_AS(lqr_gain(a, b), SynthesisError);

    Matrix f = Matrix::Zero(2, 2);
    f(0, 0) = 0.5;
    f(1, 1) = 2.0;
    Matrix h(1, 2);
    h << 1, 0;
    CHECK_THROWS_AS(observer_gain(f, h), SynthesisError);
}

TEST_CASE("common_stein_candidate: scalar closed forms") {
    Matrix a1(1, 1), a2(1, 1);
    a1 << 0.5;
    // single mode: (0.25 - 1) p = -1
    Matrix p = common_stein_candidate({a1});
    CHECK(p(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    // two modes: (0.25 - 1) p + (0.09 - 1) p = -1
    a2 << 0.3;
    p = common_stein_candidate({a1, a2});
    CHECK(p(0, 0) == doctest::Approx(1.0 / 1.66).epsilon(1e-12));

    // two nilpotent modes: -2 p = -1
    Matrix z = Matrix::Zero(1, 1);
    p = common_stein_candidate({z, z});
    CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("common_stein_candidate: diagonal matrix mode decouples") {
    Matrix a = 0.5 * Matrix::Identity(2, 2);
    Matrix p = common_stein_candidate({a});
    CHECK((p - (4.0 / 3.0) * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("common_stein_candidate: singular operator is reported") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 2.0;   // kron eigenvalue 4 and 0.25*... produces a zero pivot at 1
    a(1, 1) = 0.5;
    CHECK_THROWS_AS(common_stein_candidate({a}), CertificateUnavailableError);
    CHECK_THROWS_AS(common_stein_candidate({}), std::invalid_argument);
    CHECK_THROWS_AS(common_stein_candidate({Matrix::Zero(1, 1), Matrix::Zero(2, 2)}),
                    DimensionError);
}

TEST_CASE("common_stein_candidate: residual check on random Schur modes") {
    std::mt19937_64 gen(17u);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Index n = 1 + static_cast<Eigen::Index>(gen() % 3);
        Matrix a = random_matrix(gen, n, n, 1.0);
        double rho = spectral_radius(a);
        if (rho > 0) a *= 0.8 / std::max(1.0, rho);
        Matrix p = common_stein_candidate({a});
        Matrix residual = a.transpose() * p * a - p + Matrix::Identity(n, n);
        CHECK(residual.cwiseAbs().maxCoeff() < 1e-8);
        Eigen::SelfAdjointEigenSolver<Matrix> es(p);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}
