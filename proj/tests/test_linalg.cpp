#include <catch2/catch_amalgamated.hpp>

#include "exang/linalg.hpp"

using namespace exang;

namespace {

// Deterministic LCG so property tests are reproducible.
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint32_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<uint32_t>(s >> 33);
    }
    Mat mat(int r, int c, int p) {
        Mat m(r, c, p);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<Coeff>(next() % p);
        return m;
    }
};

// Independent oracle: brute-force kernel by enumerating all of F_p^n.
std::vector<Vec> brute_kernel(const Mat& m) {
    std::vector<Vec> ker;
    VecEnum e(m.cols, m.p);
    do {
        if (vec_is_zero(m.apply(e.value()))) ker.push_back(e.value());
    } while (e.next());
    return ker;
}

}  // namespace

TEST_CASE("rank on zero and identity matrices") {
    CHECK(rank(Mat::zero(2, 3, 5)) == 0);
    CHECK(rank(Mat::identity(4, 2)) == 4);
}

TEST_CASE("rank over F_2 of the all-ones 2x2 matrix") {
    // Oracle: rows are equal over F_2, so one independent row.
    Mat m(2, 2, 2);
    m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = 1;
    CHECK(rank(m) == 1);
}

TEST_CASE("kernel dimensions for trivial cases") {
    CHECK(kernel_basis(Mat::identity(3, 2)).dim() == 0);
    CHECK(kernel_basis(Mat::zero(2, 2, 3)).dim() == 2);
}

TEST_CASE("kernel of [[1,1]] over F_2 equals span{(1,1)}") {
    Mat m(1, 2, 2);
    m.at(0, 0) = m.at(0, 1) = 1;
    // Oracle: enumerate all four vectors of F_2^2.
    auto ker = brute_kernel(m);
    REQUIRE(ker.size() == 2);  // zero vector and (1,1)
    Subspace k = kernel_basis(m);
    CHECK(k.dim() == 1);
    CHECK(k.contains(Vec{1, 1}));
}

TEST_CASE("solve: identity, inconsistent, and underdetermined systems") {
    Vec b{1, 0, 2};
    auto r = solve(Mat::identity(3, 3), b);
    REQUIRE(r.particular);
    CHECK(*r.particular == b);
    CHECK(r.kernel.dim() == 0);

    auto none = solve(Mat::zero(2, 2, 2), Vec{1, 0});
    CHECK_FALSE(none.particular);

    // Over F_2, [[1,1]] v = (1): particular (1,0), kernel span{(1,1)}.
    Mat m(1, 2, 2);
    m.at(0, 0) = m.at(0, 1) = 1;
    auto u = solve(m, Vec{1});
    REQUIRE(u.particular);
    CHECK(m.apply(*u.particular) == Vec{1});
    CHECK(u.kernel.dim() == 1);
    CHECK(u.kernel.contains(Vec{1, 1}));
}

TEST_CASE("subspace operations in F_2^3") {
    // u = span{e1,e2}, w = span{e2,e3}: intersection is span{e2}.
    Subspace u = Subspace::span({{1, 0, 0}, {0, 1, 0}}, 3, 2);
    Subspace w = Subspace::span({{0, 1, 0}, {0, 0, 1}}, 3, 2);
    Subspace meet = u.intersect(w);
    CHECK(meet.dim() == 1);
    CHECK(meet.contains(Vec{0, 1, 0}));
    CHECK(u.sum(w).dim() == 3);
}

TEST_CASE("intersection and sum of a subspace with itself") {
    Subspace u = Subspace::span({{1, 2, 0}, {0, 0, 1}}, 3, 3);
    CHECK(u.intersect(u) == u);
    CHECK(u.sum(u) == u);
}

TEST_CASE("quotient projection by the zero subspace is injective") {
    Subspace w = Subspace::zero(3, 2);
    Mat q = w.quotient_projection();
    CHECK(q.rows == 3);
    CHECK(rank(q) == 3);
}

TEST_CASE("quotient projection kernel is exactly the subspace") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int p = (trial % 2 == 0) ? 2 : 3;
        int n = 1 + static_cast<int>(rng.next() % 5);
        Mat g = rng.mat(2, n, p);
        Subspace w = Subspace::span({g.row(0), g.row(1)}, n, p);
        Mat q = w.quotient_projection();
        CHECK(q.rows == n - w.dim());
        CHECK(kernel_basis(q) == w);
    }
}

TEST_CASE("property: rank(m) == rank(transpose(m))") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int p = (trial % 3 == 0) ? 3 : 2;
        Mat m = rng.mat(1 + rng.next() % 5, 1 + rng.next() % 5, p);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("property: cols == rank + kernel dimension") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        int p = (trial % 2 == 0) ? 2 : 5;
        Mat m = rng.mat(1 + rng.next() % 4, 1 + rng.next() % 5, p);
        CHECK(m.cols == rank(m) + kernel_basis(m).dim());
    }
}

TEST_CASE("property: solve returns genuine solutions and kernel vectors") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        int p = (trial % 2 == 0) ? 2 : 3;
        Mat m = rng.mat(1 + rng.next() % 4, 1 + rng.next() % 4, p);
        Vec b(m.rows);
        for (auto& x : b) x = static_cast<Coeff>(rng.next() % p);
        auto r = solve(m, b);
        if (r.particular) CHECK(m.apply(*r.particular) == b);
        for (const Vec& k : r.kernel.basis) CHECK(vec_is_zero(m.apply(k)));
    }
}

TEST_CASE("property: dim(u) + dim(w) == dim(u+w) + dim(u∩w)") {
    Rng rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        int p = (trial % 2 == 0) ? 2 : 3;
        int n = 2 + static_cast<int>(rng.next() % 4);
        Mat gu = rng.mat(2, n, p), gw = rng.mat(2, n, p);
        Subspace u = Subspace::span({gu.row(0), gu.row(1)}, n, p);
        Subspace w = Subspace::span({gw.row(0), gw.row(1)}, n, p);
        CHECK(u.dim() + w.dim() == u.sum(w).dim() + u.intersect(w).dim());
    }
}
