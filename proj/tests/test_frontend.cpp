#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "exang/quotient.hpp"

using namespace exang;

TEST_CASE("empty category file parses to a valid trivial presentation") {
    json doc = {{"field", 2}, {"n", 2}, {"objects", json::array()}};
    PresentationFile pf = parse_presentation(doc);
    CHECK(pf.structure.cat.nobj() == 0);
    CHECK(validate_category(pf.structure.cat).all_ok());
    CHECK(validate_bifunctor(pf.structure).all_ok());
    CHECK(check_realization(pf.structure).all_ok());
    CHECK(check_axioms(pf.structure).all_ok());
}

TEST_CASE("all fixtures parse and round-trip through the serializer") {
    for (const char* name : {"F0", "F1", "F2", "F3"}) {
        INFO(name);
        auto pf = testutil::load(name);
        json dumped = serialize_presentation(pf);
        PresentationFile again = parse_presentation(dumped);
        // semantic identity: serializing the reparse gives the same document
        CHECK(serialize_presentation(again) == dumped);
        // spot identity on the core data
        CHECK(again.structure.cat.objects == pf.structure.cat.objects);
        CHECK(again.structure.cat.homdim == pf.structure.cat.homdim);
        CHECK(again.structure.ext.edim == pf.structure.ext.edim);
        CHECK(again.structure.table.listed.size() == pf.structure.table.listed.size());
    }
}

TEST_CASE("serializer output is byte-identical across runs") {
    auto pf1 = testutil::load("F2");
    auto pf2 = testutil::load("F2");
    CHECK(serialize_presentation(pf1).dump(1) == serialize_presentation(pf2).dump(1));
}

TEST_CASE("parse errors carry JSON-pointer style locations") {
    json base = {{"field", 2}, {"n", 2}, {"objects", {"A"}},
                 {"hom", {{"A->A", {"iA"}}}},
                 {"identities", {{"A", {1}}}},
                 {"compose", {{"iA*iA", {1}}}}};

    SECTION("non-prime field") {
        json doc = base;
        doc["field"] = 6;
        try {
            parse_presentation(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.path == "/field");
        }
    }
    SECTION("dangling object name in a hom key") {
        json doc = base;
        doc["hom"]["A->B"] = {"fAB"};
        try {
            parse_presentation(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.path == "/hom/A->B");
        }
    }
    SECTION("compose entry referencing an unknown basis label") {
        json doc = base;
        doc["compose"]["zz*iA"] = {1};
        try {
            parse_presentation(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.path == "/compose/zz*iA");
        }
    }
    SECTION("missing composition entry") {
        json doc = base;
        doc["compose"] = json::object();
        try {
            parse_presentation(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.path == "/compose");
        }
    }
    SECTION("dimension mismatch in an identity vector") {
        json doc = base;
        doc["identities"]["A"] = {1, 0};
        try {
            parse_presentation(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.path == "/identities/A");
        }
    }
    SECTION("realization with wrong end terms") {
        json doc = base;
        doc["ext"] = {{"A|A", 1}};
        doc["ext_action_cov"] = {{"iA", {{"A", {{1}}}}}};
        doc["ext_action_contra"] = {{"iA", {{"A", {{1}}}}}};
        doc["realizations"] = json::array();
        json r = {{"C", "A"}, {"A", "A"}, {"coords", {1}},
                  {"terms", {{"A"}, {"A"}, {"A"}, {"A"}}},
                  {"diffs", {{{{1}}}, {{{1}}}, {{{1}}}}}};
        r["terms"][0] = json::array();  // first term must be A
        doc["realizations"].push_back(r);
        try {
            parse_presentation(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.path == "/realizations/0/terms/0");
        }
    }
    SECTION("missing bifunctor action") {
        json doc = base;
        doc["ext"] = {{"A|A", 1}};
        try {
            parse_presentation(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.path == "/ext_action_cov");
        }
    }
}

TEST_CASE("reports serialize deterministically") {
    Report rep;
    rep.add("b_check", "later", true);
    rep.add("a_check", "earlier", false, "boom");
    rep.params["bound"] = "2";
    rep.sort();
    json j1 = report_to_json(rep);
    json j2 = report_to_json(rep);
    CHECK(j1.dump(1) == j2.dump(1));
    CHECK(j1["findings"][0]["check"] == "a_check");
    CHECK(j1["failures"] == 1);
    CHECK_FALSE(j1["ok"].get<bool>());
}
