#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "exang/proper.hpp"

using namespace exang;

namespace {

int idx(const CategoryPresentation& C, const std::string& name) { return C.obj_index.at(name); }

NExangle first_listed(const Structure& S) {
    const auto& t = S.table.listed.at(0);
    return {S.table.reps.at({t.c, t.a, t.coords}),
            Extension{ObjectExpr::indec(t.c), ObjectExpr::indec(t.a), t.coords}};
}

}  // namespace

TEST_CASE("weak isomorphism: identity yes, zero map no") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    NExangle nex = first_listed(S);
    ChainMap id = identity_chain_map(S.cat, nex.complex);
    CHECK(is_weak_isomorphism(S, id, nex.delta, nex.delta));
    ChainMap z = zero_chain_map(S.cat, nex.complex, nex.complex);
    CHECK_FALSE(is_weak_isomorphism(S, z, nex.delta, nex.delta));
}

TEST_CASE("prop41: every weak isomorphism is a homotopy equivalence (F1, F3)") {
    for (const char* name : {"F1", "F3"}) {
        auto pf = testutil::load(name);
        INFO(name);
        CHECK(prop41_check(pf.structure).all_ok());
    }
}

TEST_CASE("closure_check: delta0 and full always pass") {
    for (const char* name : {"F0", "F1", "F2", "F3"}) {
        auto pf = testutil::load(name);
        INFO(name);
        CHECK(closure_check(pf.structure, DistClass::delta0(pf.structure)).all_ok());
        CHECK(closure_check(pf.structure, DistClass::full(pf.structure)).all_ok());
    }
}

TEST_CASE("closure_check: the approximation class on F3 passes") {
    auto pf = testutil::load("F3");
    DistClass xiH = DistClass::from_raw(pf.structure, pf.classes.at("xiH"));
    CHECK(closure_check(pf.structure, xiH).all_ok());
}

TEST_CASE("closure_check: a non-closed candidate on F2 is caught") {
    auto pf = testutil::load("F2");
    const Structure& S = pf.structure;
    // xi nonzero only at E(1,4): base change along 12 -> 1 forces E(12,4)
    DistClass xi = DistClass::delta0(S);
    xi.xi[idx(S.cat, "1")][idx(S.cat, "4")] = Subspace::full(1, 2);
    Report rep = closure_check(S, xi);
    CHECK_FALSE(rep.all_ok());
}

TEST_CASE("saturation: delta0 and full are saturated, both forms agree") {
    for (const char* name : {"F1", "F3"}) {
        auto pf = testutil::load(name);
        INFO(name);
        SquareUniverse U = SquareUniverse::build(pf.structure);
        for (const DistClass& xi : {DistClass::delta0(pf.structure), DistClass::full(pf.structure)}) {
            SaturationResult R = saturation_check(pf.structure, xi, U);
            CHECK(R.deflation_form);
            CHECK(R.inflation_form);
            CHECK(R.agree());
        }
    }
}

TEST_CASE("restrict_structure: full class reproduces the base dimensions") {
    auto pf = testutil::load("F1");
    auto T = restrict_structure(pf.structure, DistClass::full(pf.structure));
    REQUIRE(T);
    CHECK(T->ext.edim == pf.structure.ext.edim);
    CHECK(check_realization(*T).all_ok());
}

TEST_CASE("restrict_structure: delta0 gives the split structure") {
    auto pf = testutil::load("F1");
    auto T = restrict_structure(pf.structure, DistClass::delta0(pf.structure));
    REQUIRE(T);
    for (const auto& row : T->ext.edim)
        for (int d : row) CHECK(d == 0);
    // every conflation of the split structure is split: only sections are
    // inflations, so the generator of the nontrivial class is no longer one
    const auto& C = pf.structure.cat;
    Morphism b = basis_morphism(C, ObjectExpr::indec(idx(C, "S3")), ObjectExpr::indec(idx(C, "P2")), 0);
    CHECK(is_inflation(pf.structure, b));
    CHECK_FALSE(is_inflation(*T, b));
    CHECK(check_realization(*T).all_ok());
    CHECK(check_axioms(*T).all_ok());
}

TEST_CASE("restrict_structure: an action leaving the class is reported") {
    auto pf = testutil::load("F2");
    const Structure& S = pf.structure;
    // E(1,4) alone is not action-stable
    DistClass xi = DistClass::delta0(S);
    xi.xi[idx(S.cat, "1")][idx(S.cat, "4")] = Subspace::full(1, 2);
    Report rep;
    CHECK_FALSE(restrict_structure(S, xi, &rep));
    CHECK_FALSE(rep.all_ok());
}

TEST_CASE("theorem45: delta0 and full are proper and the two sides agree") {
    for (const char* name : {"F0", "F1", "F3"}) {
        auto pf = testutil::load(name);
        INFO(name);
        SquareUniverse U = SquareUniverse::build(pf.structure);
        for (const DistClass& xi : {DistClass::delta0(pf.structure), DistClass::full(pf.structure)}) {
            auto R = theorem45_decide(pf.structure, xi, &U);
            CHECK(R.proper);
            CHECK(R.structure_ok);
            CHECK(R.agree);
        }
    }
}

TEST_CASE("theorem45 agreement across every subspace candidate on F1 and F2") {
    for (const char* name : {"F1", "F2"}) {
        auto pf = testutil::load(name);
        INFO(name);
        SquareUniverse U = SquareUniverse::build(pf.structure);
        auto candidates = enumerate_subspace_classes(pf.structure);
        REQUIRE_FALSE(candidates.empty());
        for (const auto& xi : candidates) {
            auto R = theorem45_decide(pf.structure, xi, &U);
            INFO(xi.describe(pf.structure));
            CHECK(R.agree);
        }
    }
}

TEST_CASE("xi_from_subcategory: empty H gives the full class") {
    auto pf = testutil::load("F3");
    DistClass xi = xi_from_subcategory(pf.structure, Subcategory{});
    CHECK(xi.equals(DistClass::full(pf.structure)));
}

TEST_CASE("xi_from_subcategory: H = C forces the split class on F3") {
    auto pf = testutil::load("F3");
    DistClass xi = xi_from_subcategory(pf.structure, pf.subcategories.at("Hall"));
    CHECK(xi.equals(DistClass::delta0(pf.structure)));
}

TEST_CASE("xi_from_subcategory on F3 matches the stored class and is stable") {
    auto pf = testutil::load("F3");
    Report rep;
    DistClass xi = xi_from_subcategory(pf.structure, pf.subcategories.at("H"), &rep);
    CHECK(rep.all_ok());  // subspace test + representative independence
    DistClass expect = DistClass::from_raw(pf.structure, pf.classes.at("xiH"));
    CHECK(xi.equals(expect));
    // it contains the class of the approximating 4-angle P1 -> S1 -> S3 -> P1
    const auto& C = pf.structure.cat;
    Extension gen = zero_ext(pf.structure, ObjectExpr::indec(idx(C, "P1")),
                             ObjectExpr::indec(idx(C, "P1")));
    gen.coords[0] = 1;
    CHECK(xi.contains(pf.structure, gen));
}

TEST_CASE("theorem45 on the F3 approximation class: proper, both sides agree") {
    auto pf = testutil::load("F3");
    DistClass xiH = DistClass::from_raw(pf.structure, pf.classes.at("xiH"));
    auto R = theorem45_decide(pf.structure, xiH);
    CHECK(R.proper);
    CHECK(R.structure_ok);
    CHECK(R.agree);
}

TEST_CASE("cor44: xi-conflation maps compose on the proper candidates") {
    auto pf = testutil::load("F3");
    SquareUniverse U = SquareUniverse::build(pf.structure);
    for (const DistClass& xi :
         {DistClass::delta0(pf.structure), DistClass::full(pf.structure),
          DistClass::from_raw(pf.structure, pf.classes.at("xiH"))}) {
        CHECK(cor44_check(pf.structure, xi, U).all_ok());
    }
}

TEST_CASE("prop48 flags on F3 with H = add(S3+S1)") {
    auto pf = testutil::load("F3");
    const auto& C = pf.structure.cat;
    auto R = prop48_flags(pf.structure, pf.subcategories.at("H"));
    CHECK(R.precondition_ok);
    CHECK(R.strongly_cov_finite);
    // the featured witness: the approximating 4-angle of P1
    CHECK(R.approx_witness.at(idx(C, "P1")) == "P1 -> S1 -> S3 -> P1");
    CHECK(R.xi_nonsplit);
    CHECK(R.xi_proper);
    CHECK(R.restricted_injectives == std::vector<std::string>{"S3", "S1"});
    CHECK(R.injectives_equal_H);
    CHECK(R.verdict == "neither n-exact nor (n+2)-angulated");
}

TEST_CASE("prop48 degenerate and split branches") {
    auto pf = testutil::load("F3");
    auto R0 = prop48_flags(pf.structure, pf.subcategories.at("H0"));
    CHECK(R0.verdict == "degenerate-H0");
    auto Rall = prop48_flags(pf.structure, pf.subcategories.at("Hall"));
    CHECK(Rall.verdict == "split");
    auto pf1 = testutil::load("F1");
    auto Rpre = prop48_flags(pf1.structure, pf1.subcategories.at("X"));
    CHECK_FALSE(Rpre.precondition_ok);
}
