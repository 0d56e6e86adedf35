#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "exang/quotient.hpp"

using namespace exang;

namespace {

int idx(const CategoryPresentation& C, const std::string& name) { return C.obj_index.at(name); }

}  // namespace

TEST_CASE("build_quotient by the empty subcategory reproduces the base") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    auto Q = build_quotient(S, Subcategory{});
    REQUIRE(Q);
    for (int a = 0; a < S.cat.nobj(); ++a) {
        CHECK(Q->survives[a]);
        for (int b = 0; b < S.cat.nobj(); ++b)
            CHECK(Q->structure.cat.homdim[a][b] == S.cat.homdim[a][b]);
    }
    CHECK(validate_category(Q->structure.cat).all_ok());
}

TEST_CASE("build_quotient F1/X: survivors are exactly S3 and S1") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    auto Q = build_quotient(S, pf.subcategories.at("X"));
    REQUIRE(Q);
    CHECK(Q->build_report.all_ok());
    std::vector<std::string> alive;
    for (int a = 0; a < S.cat.nobj(); ++a)
        if (Q->survives[a]) alive.push_back(S.cat.objects[a]);
    CHECK(alive == std::vector<std::string>{"S3", "S1"});
    // dead objects have zero endomorphism spaces
    CHECK(Q->structure.cat.homdim[idx(S.cat, "P2")][idx(S.cat, "P2")] == 0);
    CHECK(validate_category(Q->structure.cat).all_ok());
    CHECK(validate_bifunctor(Q->structure).all_ok());
}

TEST_CASE("build_quotient precondition: X must sit inside the projective-injectives") {
    auto pf = testutil::load("F2");
    const Structure& S = pf.structure;
    Report pre;
    auto Q = build_quotient(S, Subcategory{{idx(S.cat, "4")}}, &pre);
    CHECK_FALSE(Q);
    REQUIRE(pre.first_failure());
    CHECK(pre.first_failure()->instance == "4");
    CHECK(pre.first_failure()->detail == "not injective");
}

TEST_CASE("projection is a ring map on Homs") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    const auto& C = S.cat;
    auto Q = build_quotient(S, pf.subcategories.at("X"));
    REQUIRE(Q);
    for (int a = 0; a < C.nobj(); ++a)
        for (int b = 0; b < C.nobj(); ++b)
            for (int c = 0; c < C.nobj(); ++c)
                for (int kf = 0; kf < C.homdim[a][b]; ++kf)
                    for (int kg = 0; kg < C.homdim[b][c]; ++kg) {
                        Morphism f = basis_morphism(C, ObjectExpr::indec(a), ObjectExpr::indec(b), kf);
                        Morphism g = basis_morphism(C, ObjectExpr::indec(b), ObjectExpr::indec(c), kg);
                        Morphism lhs = project_morphism(*Q, compose(C, g, f));
                        Morphism rhs = compose(Q->structure.cat, project_morphism(*Q, g),
                                               project_morphism(*Q, f));
                        CHECK(flat_coords(lhs) == flat_coords(rhs));
                    }
}

TEST_CASE("objects of X project to zero: identities land in the ideal") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    auto Q = build_quotient(S, pf.subcategories.at("X"));
    REQUIRE(Q);
    for (int x : pf.subcategories.at("X").members) {
        Morphism id = identity_morphism(S.cat, ObjectExpr::indec(x));
        CHECK(morphism_is_zero(project_morphism(*Q, id)));
    }
}

TEST_CASE("wkc_check: split sequences pass, the F1 conflation passes") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    auto Q = build_quotient(S, pf.subcategories.at("X"));
    REQUIRE(Q);
    // a split n-exangle projects to a contractible image
    ObjectExpr S3 = ObjectExpr::indec(idx(S.cat, "S3"));
    ObjectExpr S1 = ObjectExpr::indec(idx(S.cat, "S1"));
    Extension z = zero_ext(S, S1, S3);
    auto sp = realize(S, z);
    REQUIRE(sp);
    CHECK(wkc_check(*Q, NExangle{*sp, z}).all_ok());
    // the nontrivial conflation projects to S3 -> 0 -> 0 -> S1, still exact
    const auto& t = S.table.listed.at(0);
    Extension gen{ObjectExpr::indec(t.c), ObjectExpr::indec(t.a), t.coords};
    NExangle nex{S.table.reps.at({t.c, t.a, t.coords}), gen};
    CHECK(wkc_check(*Q, nex).all_ok());
}

TEST_CASE("wkc_check: the F2 conflation through the collapsed object fails") {
    auto pf = testutil::load("F2");
    const Structure& S = pf.structure;
    auto Q = build_quotient(S, pf.subcategories.at("X234"));
    REQUIRE(Q);
    const auto& t = S.table.listed.at(0);  // the class with ends 4 and 1
    Extension gen{ObjectExpr::indec(t.c), ObjectExpr::indec(t.a), t.coords};
    NExangle nex{S.table.reps.at({t.c, t.a, t.coords}), gen};
    Report rep = wkc_check(*Q, nex);
    CHECK_FALSE(rep.all_ok());
}

TEST_CASE("theorem31: X = empty gives YES with the base back") {
    auto pf = testutil::load("F1");
    auto R = theorem31_decide(pf.structure, Subcategory{});
    CHECK(R.verdict == Theorem31Result::Verdict::Yes);
    CHECK(R.quotient_suite.all_ok());
}

TEST_CASE("theorem31 positive case on F1") {
    auto pf = testutil::load("F1");
    auto R = theorem31_decide(pf.structure, pf.subcategories.at("X"));
    REQUIRE(R.verdict == Theorem31Result::Verdict::Yes);
    // the quotient independently passes the whole suite
    CHECK(R.quotient_suite.all_ok());
    // ... and is flagged neither exact-style nor suspension-style
    CHECK(R.quotient_not_exact_style);
    CHECK(R.quotient_has_nonzero_proj);
    // survivors
    std::vector<std::string> alive;
    for (int a = 0; a < pf.structure.cat.nobj(); ++a)
        if (R.quotient->survives[a]) alive.push_back(pf.structure.cat.objects[a]);
    CHECK(alive == std::vector<std::string>{"S3", "S1"});
}

TEST_CASE("theorem31 negative case on F2 with the pinned witness") {
    auto pf = testutil::load("F2");
    auto R = theorem31_decide(pf.structure, pf.subcategories.at("X234"));
    REQUIRE(R.verdict == Theorem31Result::Verdict::No);
    CHECK(R.witness_key == "x000");
    CHECK(R.witness_ends == "4 -> 234 -> 123 -> 1");
}

TEST_CASE("quotient structure passes projected R1 on every table entry") {
    auto pf = testutil::load("F1");
    const Structure& S = pf.structure;
    auto Q = build_quotient(S, pf.subcategories.at("X"));
    REQUIRE(Q);
    for (const auto& t : enumerate_table(Q->structure)) {
        Extension d = entry_ext(Q->structure, t);
        auto x = realize(Q->structure, d);
        REQUIRE(x);
        CHECK(is_n_exangle_ok(Q->structure, *x, d));
    }
}

TEST_CASE("n=1 smoke: theorem31 on the length-one fixture") {
    auto pf = testutil::load("F0");
    auto R = theorem31_decide(pf.structure, pf.subcategories.at("X"));
    REQUIRE(R.verdict == Theorem31Result::Verdict::Yes);
    CHECK(R.quotient_suite.all_ok());
    std::vector<std::string> alive;
    for (int a = 0; a < pf.structure.cat.nobj(); ++a)
        if (R.quotient->survives[a]) alive.push_back(pf.structure.cat.objects[a]);
    CHECK(alive == std::vector<std::string>{"S2", "S1"});
}
