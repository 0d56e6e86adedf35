#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "exang/fincat.hpp"

using namespace exang;

namespace {

/// One object, Hom = F_2 · id.
CategoryPresentation one_object() {
    CategoryPresentation C;
    C.F = Field{2};
    C.objects = {"A"};
    C.obj_index["A"] = 0;
    C.homdim = {{1}};
    C.homlabel = {{{"iA"}}};
    C.label_index["iA"] = {0, 0, 0};
    C.comp.assign(1, std::vector<std::vector<std::vector<Vec>>>(1));
    C.comp[0][0].assign(1, std::vector<Vec>{Vec{1}});
    C.identity_coords = {Vec{1}};
    return C;
}

int idx(const CategoryPresentation& C, const std::string& name) { return C.obj_index.at(name); }

Morphism basis_map(const CategoryPresentation& C, const std::string& a, const std::string& b) {
    return basis_morphism(C, ObjectExpr::indec(idx(C, a)), ObjectExpr::indec(idx(C, b)), 0);
}

}  // namespace

TEST_CASE("one-object presentation validates") {
    auto C = one_object();
    CHECK(validate_category(C).all_ok());
}

TEST_CASE("fixture F1 category laws hold") {
    auto pf = testutil::load("F1");
    CHECK(validate_category(pf.structure.cat).all_ok());
}

TEST_CASE("planted identity violation is reported") {
    auto C = one_object();
    C.comp[0][0][0][0] = Vec{0};  // id∘id := 0
    Report rep = validate_category(C);
    CHECK_FALSE(rep.all_ok());
    bool found = false;
    for (const auto& f : rep.findings)
        if (!f.ok && f.check == "identity") found = true;
    CHECK(found);
}

TEST_CASE("compose: identities, zero, and the killed relation in F1") {
    auto pf = testutil::load("F1");
    const auto& C = pf.structure.cat;
    Morphism b = basis_map(C, "S3", "P2");
    Morphism c = basis_map(C, "P2", "P1");
    CHECK(morphism_eq(compose(C, identity_morphism(C, b.dst), b), b));
    CHECK(morphism_eq(compose(C, b, identity_morphism(C, b.src)), b));
    Morphism z = zero_morphism(C, b.dst, c.dst);
    CHECK(morphism_is_zero(compose(C, z, b)));
    // the composite P2->P1 after S3->P2 dies (the algebra relation)
    CHECK(morphism_is_zero(compose(C, c, b)));
}

TEST_CASE("hom_space dimensions on F1") {
    auto pf = testutil::load("F1");
    const auto& C = pf.structure.cat;
    ObjectExpr S3 = ObjectExpr::indec(idx(C, "S3"));
    ObjectExpr P2 = ObjectExpr::indec(idx(C, "P2"));
    ObjectExpr P1 = ObjectExpr::indec(idx(C, "P1"));
    CHECK(hom_dim(C, ObjectExpr::zero(), P2) == 0);
    CHECK(hom_dim(C, S3, P2) == 1);
    CHECK(hom_dim(C, S3, P1) == 0);
    // additivity in the first slot
    CHECK(hom_dim(C, S3.plus(P2), P2) == hom_dim(C, S3, P2) + hom_dim(C, P2, P2));
}

TEST_CASE("ideal_subspace examples on F1") {
    auto pf = testutil::load("F1");
    const auto& C = pf.structure.cat;
    Subcategory all{{0, 1, 2, 3}};
    ObjectExpr S3 = ObjectExpr::indec(idx(C, "S3"));
    ObjectExpr P2 = ObjectExpr::indec(idx(C, "P2"));
    // X = everything: the identity factors, so the ideal is the full hom space
    CHECK(ideal_subspace(C, all, P2, P2).dim() == hom_dim(C, P2, P2));
    Subcategory X = pf.subcategories.at("X");
    // S3 survives the quotient: no endomorphism of S3 factors through X
    CHECK(ideal_subspace(C, X, S3, S3).dim() == 0);
    // P2 dies: its identity factors through X
    CHECK(ideal_subspace(C, X, P2, P2).dim() == hom_dim(C, P2, P2));
}

TEST_CASE("ideal_subspace is a two-sided ideal on F1 basis morphisms") {
    auto pf = testutil::load("F1");
    const auto& C = pf.structure.cat;
    Subcategory X = pf.subcategories.at("X");
    for (int a = 0; a < C.nobj(); ++a)
        for (int b = 0; b < C.nobj(); ++b) {
            ObjectExpr A = ObjectExpr::indec(a), B = ObjectExpr::indec(b);
            Subspace I = ideal_subspace(C, X, A, B);
            for (const Vec& v : I.basis) {
                Morphism m = morphism_from_flat(C, A, B, v);
                for (int c = 0; c < C.nobj(); ++c) {
                    ObjectExpr Cc = ObjectExpr::indec(c);
                    for (int k = 0; k < C.homdim[b][c]; ++k) {
                        Morphism g = basis_morphism(C, B, Cc, k);
                        CHECK(ideal_subspace(C, X, A, Cc).contains(flat_coords(compose(C, g, m))));
                    }
                    for (int k = 0; k < C.homdim[c][a]; ++k) {
                        Morphism f = basis_morphism(C, Cc, A, k);
                        CHECK(ideal_subspace(C, X, Cc, B).contains(flat_coords(compose(C, m, f))));
                    }
                }
            }
        }
}

TEST_CASE("is_isomorphism: identity, zero, and the swap on S3⊕S3") {
    auto pf = testutil::load("F1");
    const auto& C = pf.structure.cat;
    ObjectExpr S3 = ObjectExpr::indec(idx(C, "S3"));
    Morphism id = identity_morphism(C, S3);
    auto inv = is_isomorphism(C, id);
    REQUIRE(inv);
    CHECK(morphism_eq(*inv, id));
    CHECK_FALSE(is_isomorphism(C, zero_morphism(C, S3, S3)));

    ObjectExpr SS = S3.plus(S3);
    Morphism swap = zero_morphism(C, SS, SS);
    swap.block(0, 1) = C.identity_coords[idx(C, "S3")];
    swap.block(1, 0) = C.identity_coords[idx(C, "S3")];
    auto swinv = is_isomorphism(C, swap);
    REQUIRE(swinv);
    CHECK(morphism_eq(*swinv, swap));  // self-inverse over F_2
}

TEST_CASE("identity laws hold for all basis morphisms of every fixture") {
    for (const char* name : {"F0", "F1", "F2", "F3"}) {
        auto pf = testutil::load(name);
        const auto& C = pf.structure.cat;
        for (int a = 0; a < C.nobj(); ++a)
            for (int b = 0; b < C.nobj(); ++b)
                for (int k = 0; k < C.homdim[a][b]; ++k) {
                    Morphism f = basis_morphism(C, ObjectExpr::indec(a), ObjectExpr::indec(b), k);
                    CHECK(morphism_eq(compose(C, identity_morphism(C, f.dst), f), f));
                    CHECK(morphism_eq(compose(C, f, identity_morphism(C, f.src)), f));
                }
    }
}
