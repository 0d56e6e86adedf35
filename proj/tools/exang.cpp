/* Command-line front end: validate presentations, decide the ideal-quotient
 * and proper-class questions, and emit deterministic reports.
 *
 * Exit codes: 0 = all checks pass / verdict YES; 1 = a check failed or the
 * verdict is NO; 2 = input error (bad file, dangling name, unknown flag). */

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "exang/presentation_io.hpp"
#include "exang/proper.hpp"
#include "exang/quotient.hpp"

using namespace exang;

namespace {

struct Output {
    json doc;
    std::string json_path;

    ~Output() {
        if (!json_path.empty()) {
            std::ofstream out(json_path, std::ios::binary);
            out << doc.dump(1) << "\n";
        }
    }
};

void apply_env_bounds(Structure& S) {
    if (const char* env = std::getenv("EXANG_MAX_MULT")) {
        int m = std::atoi(env);
        if (m >= 1) {
            S.bounds.max_mult = m;
            S.bounds.pad = std::max(S.bounds.pad, m);
        }
    }
}

void print_section(const std::string& name, const Report& rep) {
    std::cout << name << ": " << (rep.all_ok() ? "ok" : "FAIL") << " (" << rep.findings.size()
              << " findings";
    if (!rep.all_ok()) std::cout << ", " << rep.failure_count() << " failures";
    std::cout << ")\n";
    for (const auto& f : rep.findings)
        if (!f.ok) std::cout << "  FAIL " << f.check << " " << f.instance << ": " << f.detail << "\n";
}

json report_json(const Report& rep) { return report_to_json(rep); }

int cmd_validate(const std::string& file, Output& out) {
    auto pf = parse_presentation_file(file);
    apply_env_bounds(pf.structure);
    const Structure& S = pf.structure;
    Report cat = validate_category(S.cat);
    Report bif = validate_bifunctor(S);
    Report real = check_realization(S);
    Report ax = check_axioms(S);
    Report lem;
    auto [P, I] = classify_proj_inj(S, &lem);
    print_section("category", cat);
    print_section("bifunctor", bif);
    print_section("realization", real);
    print_section("axioms", ax);
    print_section("proj-inj", lem);
    std::string pn, in;
    for (int p : P.members) pn += (pn.empty() ? "" : " ") + S.cat.objects[p];
    for (int i : I.members) in += (in.empty() ? "" : " ") + S.cat.objects[i];
    std::cout << "projectives: " << (pn.empty() ? "(none)" : pn) << "\n";
    std::cout << "injectives: " << (in.empty() ? "(none)" : in) << "\n";
    bool ok = cat.all_ok() && bif.all_ok() && real.all_ok() && ax.all_ok() && lem.all_ok();
    std::cout << "RESULT: " << (ok ? "PASS" : "FAIL") << "\n";
    out.doc["command"] = "validate";
    out.doc["category"] = report_json(cat);
    out.doc["bifunctor"] = report_json(bif);
    out.doc["realization"] = report_json(real);
    out.doc["axioms"] = report_json(ax);
    out.doc["proj_inj"] = report_json(lem);
    out.doc["projectives"] = pn;
    out.doc["injectives"] = in;
    out.doc["ok"] = ok;
    return ok ? 0 : 1;
}

int cmd_quotient(const std::string& file, const std::string& subcat, bool decide, Output& out) {
    auto pf = parse_presentation_file(file);
    apply_env_bounds(pf.structure);
    const Structure& S = pf.structure;
    auto it = pf.subcategories.find(subcat);
    if (it == pf.subcategories.end()) throw ParseError("/subcategories", "unknown subcategory '" + subcat + "'");
    out.doc["command"] = "quotient";
    out.doc["subcat"] = subcat;
    if (!decide) {
        Report pre;
        auto Q = build_quotient(S, it->second, &pre);
        print_section("precondition", pre);
        if (!Q) {
            out.doc["ok"] = false;
            out.doc["precondition"] = report_json(pre);
            std::cout << "RESULT: FAIL\n";
            return 1;
        }
        std::string alive;
        for (int a = 0; a < S.cat.nobj(); ++a)
            if (Q->survives[a]) alive += (alive.empty() ? "" : " ") + S.cat.objects[a];
        std::cout << "survivors: " << alive << "\n";
        print_section("well-definedness", Q->build_report);
        bool ok = Q->build_report.all_ok();
        out.doc["survivors"] = alive;
        out.doc["well_definedness"] = report_json(Q->build_report);
        out.doc["ok"] = ok;
        std::cout << "RESULT: " << (ok ? "PASS" : "FAIL") << "\n";
        return ok ? 0 : 1;
    }
    auto R = theorem31_decide(S, it->second);
    print_section("precondition", R.precheck);
    if (R.verdict == Theorem31Result::Verdict::PreconditionViolated) {
        out.doc["verdict"] = "precondition-violated";
        out.doc["precondition"] = report_json(R.precheck);
        out.doc["ok"] = false;
        std::cout << "RESULT: FAIL (precondition)\n";
        return 1;
    }
    print_section("weak-kernel-cokernel", R.wkc);
    if (R.verdict == Theorem31Result::Verdict::No) {
        std::cout << "verdict: NO\n";
        std::cout << "witness: " << R.witness_key << " (" << R.witness_ends << ")\n";
        out.doc["verdict"] = "NO";
        out.doc["witness"] = R.witness_key;
        out.doc["witness_ends"] = R.witness_ends;
        out.doc["wkc"] = report_json(R.wkc);
        out.doc["ok"] = false;
        return 1;
    }
    std::string alive;
    for (int a = 0; a < S.cat.nobj(); ++a)
        if (R.quotient->survives[a]) alive += (alive.empty() ? "" : " ") + S.cat.objects[a];
    std::cout << "verdict: YES\n";
    std::cout << "survivors: " << alive << "\n";
    print_section("quotient-suite", R.quotient_suite);
    std::cout << "quotient not exact-style: " << (R.quotient_not_exact_style ? "yes" : "no") << "\n";
    std::cout << "quotient has nonzero projectives: "
              << (R.quotient_has_nonzero_proj ? "yes" : "no") << "\n";
    bool ok = R.quotient_suite.all_ok();
    out.doc["verdict"] = "YES";
    out.doc["survivors"] = alive;
    out.doc["wkc"] = report_json(R.wkc);
    out.doc["quotient_suite"] = report_json(R.quotient_suite);
    out.doc["not_exact_style"] = R.quotient_not_exact_style;
    out.doc["nonzero_projectives"] = R.quotient_has_nonzero_proj;
    out.doc["ok"] = ok;
    std::cout << "RESULT: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_wkc(const std::string& file, const std::string& subcat, const std::string& key, Output& out) {
    auto pf = parse_presentation_file(file);
    apply_env_bounds(pf.structure);
    const Structure& S = pf.structure;
    auto it = pf.subcategories.find(subcat);
    if (it == pf.subcategories.end()) throw ParseError("/subcategories", "unknown subcategory '" + subcat + "'");
    Report pre;
    auto Q = build_quotient(S, it->second, &pre);
    if (!Q) throw ParseError("/subcategories/" + subcat, "subcategory violates the precondition");
    auto entries = enumerate_table(S);
    int idx = 0;
    for (const auto& t : entries) {
        std::string k = "x" + std::to_string(idx / 100) + std::to_string((idx / 10) % 10) +
                        std::to_string(idx % 10);
        if (k == key) {
            Extension d = entry_ext(S, t);
            auto x = realize(S, d);
            if (!x) throw ParseError("/realizations", "entry has no representative");
            Report rep = wkc_check(*Q, NExangle{*x, d});
            print_section("wkc " + key + " " + ext_key(S, d), rep);
            out.doc["command"] = "wkc";
            out.doc["exangle"] = key;
            out.doc["class"] = ext_key(S, d);
            out.doc["report"] = report_json(rep);
            out.doc["ok"] = rep.all_ok();
            std::cout << "RESULT: " << (rep.all_ok() ? "PASS" : "FAIL") << "\n";
            return rep.all_ok() ? 0 : 1;
        }
        ++idx;
    }
    throw ParseError("/", "unknown n-exangle key '" + key + "'");
}

int cmd_proper(const std::string& file, const std::string& cls, Output& out) {
    auto pf = parse_presentation_file(file);
    apply_env_bounds(pf.structure);
    const Structure& S = pf.structure;
    auto it = pf.classes.find(cls);
    if (it == pf.classes.end()) throw ParseError("/classes", "unknown class '" + cls + "'");
    DistClass xi = DistClass::from_raw(S, it->second);
    auto R = theorem45_decide(S, xi);
    std::cout << "class: " << xi.describe(S) << "\n";
    print_section("class-axioms", R.class_side);
    print_section("restricted-structure", R.structure_side);
    std::cout << "proper: " << (R.proper ? "yes" : "no") << "\n";
    std::cout << "restriction passes: " << (R.structure_ok ? "yes" : "no") << "\n";
    std::cout << "sides agree: " << (R.agree ? "yes" : "no") << "\n";
    bool ok = R.proper && R.structure_ok && R.agree;
    out.doc["command"] = "proper";
    out.doc["class"] = cls;
    out.doc["class_side"] = report_json(R.class_side);
    out.doc["structure_side"] = report_json(R.structure_side);
    out.doc["proper"] = R.proper;
    out.doc["structure_ok"] = R.structure_ok;
    out.doc["agree"] = R.agree;
    out.doc["ok"] = ok;
    std::cout << "RESULT: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_xi_from(const std::string& file, const std::string& subcat, bool flags, Output& out) {
    auto pf = parse_presentation_file(file);
    apply_env_bounds(pf.structure);
    const Structure& S = pf.structure;
    auto it = pf.subcategories.find(subcat);
    if (it == pf.subcategories.end()) throw ParseError("/subcategories", "unknown subcategory '" + subcat + "'");
    Report rep;
    DistClass xi = xi_from_subcategory(S, it->second, &rep);
    std::cout << "xi(" << subcat << "): " << xi.describe(S) << "\n";
    print_section("construction", rep);
    out.doc["command"] = "xi-from";
    out.doc["subcat"] = subcat;
    out.doc["xi"] = xi.describe(S);
    out.doc["construction"] = report_json(rep);
    if (!flags) {
        bool ok = rep.all_ok();
        out.doc["ok"] = ok;
        std::cout << "RESULT: " << (ok ? "PASS" : "FAIL") << "\n";
        return ok ? 0 : 1;
    }
    auto R = prop48_flags(S, it->second);
    print_section("flags", R.rep);
    std::cout << "strongly covariantly finite: " << (R.strongly_cov_finite ? "yes" : "no") << "\n";
    for (const auto& [b, w] : R.approx_witness)
        std::cout << "  approximation of " << S.cat.objects[b] << ": " << w << "\n";
    std::cout << "xi strictly larger than the split class: " << (R.xi_nonsplit ? "yes" : "no")
              << "\n";
    std::cout << "xi proper: " << (R.xi_proper ? "yes" : "no") << "\n";
    std::string in;
    for (const auto& s : R.restricted_injectives) in += (in.empty() ? "" : " ") + s;
    std::cout << "injectives of the restriction: " << (in.empty() ? "(none)" : in) << "\n";
    std::cout << "verdict: " << R.verdict << "\n";
    bool ok = rep.all_ok() && R.rep.all_ok();
    out.doc["flags"] = report_json(R.rep);
    out.doc["strongly_cov_finite"] = R.strongly_cov_finite;
    out.doc["xi_nonsplit"] = R.xi_nonsplit;
    out.doc["xi_proper"] = R.xi_proper;
    out.doc["restricted_injectives"] = in;
    out.doc["verdict"] = R.verdict;
    out.doc["ok"] = ok;
    std::cout << "RESULT: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite n-exangulated structure verifier"};
    app.require_subcommand(1);

    std::string file, subcat, cls, key, json_path;

    auto* validate = app.add_subcommand("validate", "run the full validation suite");
    validate->add_option("file", file)->required();
    validate->add_option("--json", json_path, "write the machine-readable report");

    auto* quotient = app.add_subcommand("quotient", "build the ideal quotient");
    quotient->add_option("file", file)->required();
    quotient->add_option("--subcat", subcat)->required();
    bool decide = false;
    quotient->add_flag("--decide", decide, "run the decision procedure");
    quotient->add_option("--json", json_path);

    auto* wkc = app.add_subcommand("wkc", "weak kernel-cokernel test for one n-exangle");
    wkc->add_option("file", file)->required();
    wkc->add_option("--subcat", subcat)->required();
    wkc->add_option("--exangle", key)->required();
    wkc->add_option("--json", json_path);

    auto* proper = app.add_subcommand("proper", "decide whether a stored class is proper");
    proper->add_option("file", file)->required();
    proper->add_option("--class", cls)->required();
    proper->add_option("--json", json_path);

    auto* xifrom = app.add_subcommand("xi-from", "build the class of left-approximation conflations");
    xifrom->add_option("file", file)->required();
    xifrom->add_option("--subcat", subcat)->required();
    bool flags = false;
    xifrom->add_flag("--flags", flags, "run the full flag battery");
    xifrom->add_option("--json", json_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out;
    out.json_path = json_path;
    out.doc["file"] = file;
    try {
        if (app.got_subcommand(validate)) return cmd_validate(file, out);
        if (app.got_subcommand(quotient)) return cmd_quotient(file, subcat, decide, out);
        if (app.got_subcommand(wkc)) return cmd_wkc(file, subcat, key, out);
        if (app.got_subcommand(proper)) return cmd_proper(file, cls, out);
        if (app.got_subcommand(xifrom)) return cmd_xi_from(file, subcat, flags, out);
    } catch (const ParseError& e) {
        std::cerr << "input error at " << e.path << ": " << e.what() << "\n";
        out.doc["input_error"] = e.what();
        out.doc["ok"] = false;
        return 2;
    }
    return 2;
}
