#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "exang/exstruct.hpp"

using namespace exang;

namespace {

int idx(const CategoryPresentation& C, const std::string& name) { return C.obj_index.at(name); }

/// F1's unique nontrivial conflation S3 -> P2 -> P1 -> S1, from the table.
ComplexNp2 f1_conflation(const Structure& S) {
    const auto& t = S.table.listed.at(0);
    return S.table.reps.at({t.c, t.a, t.coords});
}

/// Exhaustive homotopy search: try every tuple of maps h^i, independent of
/// the linear solver used by null_homotopy.
bool brute_force_nullhomotopic(const CategoryPresentation& C, const ChainMap& f) {
    int n = f.src.n;
    std::vector<int> dims;
    for (int i = 1; i <= n + 1; ++i) dims.push_back(hom_dim(C, f.src.terms[i], f.dst.terms[i - 1]));
    int total = 0;
    for (int d : dims) total += d;
    VecEnum e(total, C.F.p);
    do {
        std::vector<Morphism> h;
        int off = 0;
        for (int i = 1; i <= n + 1; ++i) {
            Vec flat(e.value().begin() + off, e.value().begin() + off + dims[i - 1]);
            off += dims[i - 1];
            h.push_back(morphism_from_flat(C, f.src.terms[i], f.dst.terms[i - 1], flat));
        }
        bool match = true;
        for (int i = 0; i <= n + 1 && match; ++i) {
            Morphism acc = zero_morphism(C, f.src.terms[i], f.dst.terms[i]);
            if (i >= 1) acc = add_morphisms(C, acc, compose(C, f.dst.diffs[i - 1], h[i - 1]));
            if (i <= n) acc = add_morphisms(C, acc, compose(C, h[i], f.src.diffs[i]));
            if (!(flat_coords(acc) == flat_coords(f.comps[i]))) match = false;
        }
        if (match) return true;
    } while (e.next());
    return false;
}

}  // namespace

TEST_CASE("validate_complex: split shape, all-zero, planted violation") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ObjectExpr A = ObjectExpr::indec(idx(C, "S3"));
    // the one-sided unit A -> A -> 0 -> 0
    CHECK(validate_complex(C, left_unit_complex(S, A)).all_ok());
    // all-zero complex
    ComplexNp2 z;
    z.n = S.n;
    z.terms.assign(S.n + 2, ObjectExpr::zero());
    for (int i = 0; i <= S.n; ++i) z.diffs.push_back(zero_morphism(C, z.terms[i], z.terms[i + 1]));
    CHECK(validate_complex(C, z).all_ok());
    // planted d^1 d^0 != 0
    ComplexNp2 bad;
    bad.n = S.n;
    bad.terms = {A, A, A, A};
    for (int i = 0; i <= S.n; ++i) bad.diffs.push_back(identity_morphism(C, A));
    Report rep = validate_complex(C, bad);
    CHECK_FALSE(rep.all_ok());
    CHECK(rep.first_failure()->instance == "d1d0");
}

TEST_CASE("is_chain_map on identity, zero, and a broken square") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ComplexNp2 x = f1_conflation(S);
    CHECK(is_chain_map(C, identity_chain_map(C, x)));
    CHECK(is_chain_map(C, zero_chain_map(C, x, x)));
    ChainMap broken = identity_chain_map(C, x);
    broken.comps[1] = zero_morphism(C, x.terms[1], x.terms[1]);
    CHECK_FALSE(is_chain_map(C, broken));
}

TEST_CASE("null_homotopy: zero map, contractible identity, rigid conflation") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ComplexNp2 x = f1_conflation(S);
    // f = 0 has the zero homotopy
    auto h0 = null_homotopy(C, zero_chain_map(C, x, x));
    REQUIRE(h0);
    // identity on the contractible unit A -> A -> 0 -> 0
    ObjectExpr A = ObjectExpr::indec(idx(C, "S3"));
    ComplexNp2 u = left_unit_complex(S, A);
    auto h1 = null_homotopy(C, identity_chain_map(C, u));
    CHECK(h1);
    // identity on the nontrivial conflation is NOT null-homotopic;
    // cross-check with the exhaustive independent search
    ChainMap idx_map = identity_chain_map(C, x);
    CHECK_FALSE(null_homotopy(C, idx_map));
    CHECK_FALSE(brute_force_nullhomotopic(C, idx_map));
}

TEST_CASE("null_homotopy witness reproduces the map exactly") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ObjectExpr A = ObjectExpr::indec(idx(C, "S3"));
    ComplexNp2 u = left_unit_complex(S, A);
    ChainMap f = identity_chain_map(C, u);
    auto h = null_homotopy(C, f);
    REQUIRE(h);
    for (int i = 0; i <= u.n + 1; ++i) {
        Morphism acc = zero_morphism(C, u.terms[i], u.terms[i]);
        if (i >= 1) acc = add_morphisms(C, acc, compose(C, u.diffs[i - 1], h->maps[i - 1]));
        if (i <= u.n) acc = add_morphisms(C, acc, compose(C, h->maps[i], u.diffs[i]));
        CHECK(flat_coords(acc) == flat_coords(f.comps[i]));
    }
}

TEST_CASE("homotopy_equivalent: reflexivity, padding, and a rigid pair") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ComplexNp2 x = f1_conflation(S);
    CHECK(homotopy_equivalent(C, x, x, true));
    // x vs x padded with a contractible summand in adjacent interior degrees
    ComplexNp2 padded = pad_complex(C, x, 1, ObjectExpr::indec(idx(C, "P1")));
    CHECK(validate_complex(C, padded).all_ok());
    auto w = homotopy_equivalent(C, x, padded, true);
    REQUIRE(w);
    CHECK(is_chain_map(C, w->fwd));
    CHECK(is_chain_map(C, w->bwd));
    // the nontrivial conflation is not equivalent to the split complex
    ComplexNp2 sp = split_complex(S, x.terms[0], x.terms[S.n + 1]);
    CHECK_FALSE(homotopy_equivalent(C, x, sp, true));
    CHECK_FALSE(homotopy_equivalent(C, x, sp, false));
}

TEST_CASE("homotopy equivalence witnesses compose") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ComplexNp2 x = f1_conflation(S);
    ComplexNp2 y = pad_complex(C, x, 1, ObjectExpr::indec(idx(C, "P2")));
    auto w = homotopy_equivalent(C, x, y, true);
    REQUIRE(w);
    ChainMap round = compose_chain_maps(C, w->bwd, w->fwd);
    CHECK(is_chain_map(C, round));
    CHECK(null_homotopy(C, subtract_identity(C, round)));
}

TEST_CASE("mapping cone: d^2 = 0 and contractibility for the identity lift") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ComplexNp2 x = f1_conflation(S);
    ChainMap idm = identity_chain_map(C, x);
    ComplexNp2 cone = mapping_cone(C, idm);
    CHECK(validate_complex(C, cone).all_ok());
    // cone of the identity is contractible: its identity is null-homotopic
    CHECK(null_homotopy(C, identity_chain_map(C, cone)));
}

TEST_CASE("mapping cone of the split identity lift is a valid contractible complex") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ObjectExpr A = ObjectExpr::indec(idx(C, "S3"));
    ComplexNp2 sp = split_complex(S, A, ObjectExpr::indec(idx(C, "S1")));
    ComplexNp2 cone = mapping_cone(C, identity_chain_map(C, sp));
    CHECK(validate_complex(C, cone).all_ok());
    CHECK(null_homotopy(C, identity_chain_map(C, cone)));
}

TEST_CASE("mapping cocone: d^2 = 0 and contractibility for the identity lift") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    ComplexNp2 x = f1_conflation(S);
    ComplexNp2 cocone = mapping_cocone(C, identity_chain_map(C, x));
    CHECK(validate_complex(C, cocone).all_ok());
    CHECK(null_homotopy(C, identity_chain_map(C, cocone)));
}

TEST_CASE("cone d^2 = 0 across fixtures and lifts") {
    for (const char* name : {"F0", "F1", "F3"}) {
        auto pf = testutil::load(name);
        const Structure& S = pf.structure;
        const auto& C = S.cat;
        for (const auto& t : S.table.listed) {
            ComplexNp2 x = S.table.reps.at({t.c, t.a, t.coords});
            ComplexNp2 cone = mapping_cone(C, identity_chain_map(C, x));
            CHECK(validate_complex(C, cone).all_ok());
            ComplexNp2 cocone = mapping_cocone(C, identity_chain_map(C, x));
            CHECK(validate_complex(C, cocone).all_ok());
        }
    }
}
