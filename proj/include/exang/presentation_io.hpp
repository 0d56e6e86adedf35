#pragma once

/* Fixture file format: a UTF-8 JSON document presenting the category, the
 * extension bifunctor, the realization table, and optional named
 * subcategories and extension classes.  See docs/format.md for the schema
 * and a worked listing.  Every dangling reference or dimension mismatch is
 * a parse error carrying a JSON-pointer-style location. */

#include <fstream>

#include <nlohmann/json.hpp>

#include "exang/exstruct.hpp"

namespace exang {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    std::string path;
    ParseError(const std::string& path_, const std::string& msg)
        : std::runtime_error(path_ + ": " + msg), path(path_) {}
};

struct PresentationFile {
    Structure structure;
    std::map<std::string, Subcategory> subcategories;
    // raw class data: name -> (c,a) -> basis vectors of a subspace of E(c,a)
    std::map<std::string, std::map<std::pair<int, int>, std::vector<Vec>>> classes;
};

namespace detail {

inline std::pair<std::string, std::string> split2(const std::string& key, const std::string& sep,
                                                  const std::string& path) {
    auto pos = key.find(sep);
    if (pos == std::string::npos) throw ParseError(path, "expected '" + sep + "' in key '" + key + "'");
    return {key.substr(0, pos), key.substr(pos + sep.size())};
}

inline int obj_of(const CategoryPresentation& C, const std::string& name, const std::string& path) {
    auto it = C.obj_index.find(name);
    if (it == C.obj_index.end()) throw ParseError(path, "unknown object '" + name + "'");
    return it->second;
}

inline Vec coeff_vec(const json& j, int want_len, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of coefficients");
    if (static_cast<int>(j.size()) != want_len)
        throw ParseError(path, "expected " + std::to_string(want_len) + " coefficients, got " +
                                   std::to_string(j.size()));
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ParseError(path, "coefficients must be integers");
        v.push_back(x.get<int>());
    }
    return v;
}

inline Mat coeff_mat(const json& j, int rows, int cols, int p, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError(path, "expected a matrix with " + std::to_string(rows) + " rows");
    Mat m(rows, cols, p);
    Field F{p};
    for (int r = 0; r < rows; ++r) {
        Vec row = coeff_vec(j[r], cols, path + "/" + std::to_string(r));
        for (int c = 0; c < cols; ++c) m.at(r, c) = F.norm(row[c]);
    }
    return m;
}

}  // namespace detail

inline PresentationFile parse_presentation(const json& doc) {
    PresentationFile out;
    Structure& S = out.structure;
    CategoryPresentation& C = S.cat;

    if (!doc.is_object()) throw ParseError("/", "top level must be a JSON object");
    if (!doc.contains("field") || !doc["field"].is_number_integer())
        throw ParseError("/field", "missing prime field");
    int p = doc["field"].get<int>();
    if (!is_prime(p)) throw ParseError("/field", std::to_string(p) + " is not prime");
    C.F = Field{p};
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 1)
        throw ParseError("/n", "n must be a positive integer");
    S.n = doc["n"].get<int>();

    if (!doc.contains("objects") || !doc["objects"].is_array())
        throw ParseError("/objects", "missing object list");
    for (const auto& o : doc["objects"]) {
        std::string name = o.get<std::string>();
        if (C.obj_index.count(name)) throw ParseError("/objects", "duplicate object '" + name + "'");
        C.obj_index[name] = C.nobj();
        C.objects.push_back(name);
    }
    int n = C.nobj();
    C.homdim.assign(n, std::vector<int>(n, 0));
    C.homlabel.assign(n, std::vector<std::vector<std::string>>(n));

    if (doc.contains("hom")) {
        for (const auto& [key, val] : doc["hom"].items()) {
            std::string path = "/hom/" + key;
            auto [an, bn] = detail::split2(key, "->", path);
            int a = detail::obj_of(C, an, path), b = detail::obj_of(C, bn, path);
            if (!val.is_array() || val.empty()) throw ParseError(path, "expected nonempty label list");
            for (const auto& lab : val) {
                std::string l = lab.get<std::string>();
                if (C.label_index.count(l)) throw ParseError(path, "duplicate basis label '" + l + "'");
                C.label_index[l] = {a, b, C.homdim[a][b]};
                C.homlabel[a][b].push_back(l);
                ++C.homdim[a][b];
            }
        }
    }

    C.identity_coords.resize(n);
    for (int a = 0; a < n; ++a) C.identity_coords[a] = Vec(C.homdim[a][a], 0);
    if (doc.contains("identities")) {
        for (const auto& [key, val] : doc["identities"].items()) {
            std::string path = "/identities/" + key;
            int a = detail::obj_of(C, key, path);
            C.identity_coords[a] = detail::coeff_vec(val, C.homdim[a][a], path);
        }
    }
    for (int a = 0; a < n; ++a)
        if (C.homdim[a][a] > 0 && vec_is_zero(C.identity_coords[a]))
            throw ParseError("/identities", "object '" + C.objects[a] + "' has no identity");

    // composition table, required on every composable basis pair
    C.comp.assign(n, std::vector<std::vector<std::vector<Vec>>>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            C.comp[a][b].resize(n);
            for (int c = 0; c < n; ++c)
                C.comp[a][b][c].assign(static_cast<size_t>(C.homdim[b][c]) * C.homdim[a][b],
                                       Vec(C.homdim[a][c], 0));
        }
    std::set<std::tuple<int, int, int, int, int>> seen_pairs;
    if (doc.contains("compose")) {
        for (const auto& [key, val] : doc["compose"].items()) {
            std::string path = "/compose/" + key;
            auto [gl, fl] = detail::split2(key, "*", path);
            auto git = C.label_index.find(gl);
            auto fit = C.label_index.find(fl);
            if (git == C.label_index.end()) throw ParseError(path, "unknown basis label '" + gl + "'");
            if (fit == C.label_index.end()) throw ParseError(path, "unknown basis label '" + fl + "'");
            auto [b2, c, g] = git->second;
            auto [a, b, f] = fit->second;
            if (b != b2) throw ParseError(path, "labels are not composable");
            C.comp[a][b][c][static_cast<size_t>(g) * C.homdim[a][b] + f] =
                detail::coeff_vec(val, C.homdim[a][c], path);
            seen_pairs.insert({a, b, c, g, f});
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int g = 0; g < C.homdim[b][c]; ++g)
                    for (int f = 0; f < C.homdim[a][b]; ++f)
                        if (!seen_pairs.count({a, b, c, g, f}))
                            throw ParseError("/compose", "missing entry " + C.homlabel[b][c][g] + "*" +
                                                             C.homlabel[a][b][f]);

    // extension dimensions
    S.ext.edim.assign(n, std::vector<int>(n, 0));
    if (doc.contains("ext")) {
        for (const auto& [key, val] : doc["ext"].items()) {
            std::string path = "/ext/" + key;
            auto [cn, an] = detail::split2(key, "|", path);
            int c = detail::obj_of(C, cn, path), a = detail::obj_of(C, an, path);
            int d = val.get<int>();
            if (d < 0) throw ParseError(path, "negative dimension");
            S.ext.edim[c][a] = d;
        }
    }

    // bifunctor actions; required whenever source and target spaces are nonzero
    S.ext.cov.assign(n, std::vector<std::vector<std::vector<Mat>>>(n));
    S.ext.contra.assign(n, std::vector<std::vector<std::vector<Mat>>>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            S.ext.cov[a][b].resize(C.homdim[a][b]);
            S.ext.contra[a][b].resize(C.homdim[a][b]);
            for (int k = 0; k < C.homdim[a][b]; ++k) {
                S.ext.cov[a][b][k].resize(n);
                S.ext.contra[a][b][k].resize(n);
                for (int m = 0; m < n; ++m) {
                    S.ext.cov[a][b][k][m] = Mat::zero(S.ext.edim[m][b], S.ext.edim[m][a], p);
                    S.ext.contra[a][b][k][m] = Mat::zero(S.ext.edim[a][m], S.ext.edim[b][m], p);
                }
            }
        }
    auto parse_actions = [&](const char* key, bool covariant) {
        std::set<std::tuple<int, int, int, int>> given;
        if (doc.contains(key)) {
            for (const auto& [lab, table] : doc[key].items()) {
                std::string path = std::string("/") + key + "/" + lab;
                auto lit = C.label_index.find(lab);
                if (lit == C.label_index.end()) throw ParseError(path, "unknown basis label '" + lab + "'");
                auto [a, b, k] = lit->second;
                for (const auto& [on, mat] : table.items()) {
                    std::string mpath = path + "/" + on;
                    int m = detail::obj_of(C, on, mpath);
                    if (covariant)
                        S.ext.cov[a][b][k][m] =
                            detail::coeff_mat(mat, S.ext.edim[m][b], S.ext.edim[m][a], p, mpath);
                    else
                        S.ext.contra[a][b][k][m] =
                            detail::coeff_mat(mat, S.ext.edim[a][m], S.ext.edim[b][m], p, mpath);
                    given.insert({a, b, k, m});
                }
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int k = 0; k < C.homdim[a][b]; ++k)
                    for (int m = 0; m < n; ++m) {
                        int rows = covariant ? S.ext.edim[m][b] : S.ext.edim[a][m];
                        int cols = covariant ? S.ext.edim[m][a] : S.ext.edim[b][m];
                        if (rows > 0 && cols > 0 && !given.count({a, b, k, m}))
                            throw ParseError(std::string("/") + key,
                                             "missing action of '" + C.homlabel[a][b][k] + "' at object '" +
                                                 C.objects[m] + "'");
                    }
    };
    parse_actions("ext_action_cov", true);
    parse_actions("ext_action_contra", false);

    // realization table
    if (doc.contains("realizations")) {
        if (!doc["realizations"].is_array()) throw ParseError("/realizations", "expected array");
        int idx = 0;
        for (const auto& r : doc["realizations"]) {
            std::string path = "/realizations/" + std::to_string(idx++);
            int c = detail::obj_of(C, r.at("C").get<std::string>(), path + "/C");
            int a = detail::obj_of(C, r.at("A").get<std::string>(), path + "/A");
            Vec coords = detail::coeff_vec(r.at("coords"), S.ext.edim[c][a], path + "/coords");
            if (!r.contains("terms") || static_cast<int>(r["terms"].size()) != S.n + 2)
                throw ParseError(path + "/terms", "expected n+2 terms");
            ComplexNp2 x;
            x.n = S.n;
            for (int i = 0; i <= S.n + 1; ++i) {
                ObjectExpr t;
                for (const auto& on : r["terms"][i])
                    t.factors.push_back(
                        detail::obj_of(C, on.get<std::string>(), path + "/terms/" + std::to_string(i)));
                x.terms.push_back(t);
            }
            if (!(x.terms[0] == ObjectExpr::indec(a)))
                throw ParseError(path + "/terms/0", "first term must be A");
            if (!(x.terms[S.n + 1] == ObjectExpr::indec(c)))
                throw ParseError(path + "/terms/" + std::to_string(S.n + 1), "last term must be C");
            if (!r.contains("diffs") || static_cast<int>(r["diffs"].size()) != S.n + 1)
                throw ParseError(path + "/diffs", "expected n+1 differentials");
            for (int i = 0; i <= S.n; ++i) {
                std::string dpath = path + "/diffs/" + std::to_string(i);
                const json& grid = r["diffs"][i];
                Morphism m = zero_morphism(C, x.terms[i], x.terms[i + 1]);
                if (!grid.is_array() || static_cast<int>(grid.size()) != x.terms[i + 1].size())
                    throw ParseError(dpath, "expected one row per target factor");
                for (int rr = 0; rr < x.terms[i + 1].size(); ++rr) {
                    if (static_cast<int>(grid[rr].size()) != x.terms[i].size())
                        throw ParseError(dpath, "expected one block per source factor");
                    for (int cc = 0; cc < x.terms[i].size(); ++cc)
                        m.block(rr, cc) = detail::coeff_vec(
                            grid[rr][cc], C.homdim[x.terms[i].factors[cc]][x.terms[i + 1].factors[rr]],
                            dpath);
                }
                x.diffs.push_back(m);
            }
            auto key = std::make_tuple(c, a, coords);
            if (S.table.reps.count(key)) throw ParseError(path, "duplicate realization entry");
            S.table.reps[key] = x;
            S.table.listed.push_back({c, a, coords});
        }
    }

    if (doc.contains("subcategories")) {
        for (const auto& [name, arr] : doc["subcategories"].items()) {
            std::string path = "/subcategories/" + name;
            Subcategory X;
            for (const auto& on : arr) X.members.push_back(detail::obj_of(C, on.get<std::string>(), path));
            std::sort(X.members.begin(), X.members.end());
            X.members.erase(std::unique(X.members.begin(), X.members.end()), X.members.end());
            out.subcategories[name] = X;
        }
    }

    if (doc.contains("classes")) {
        for (const auto& [name, table] : doc["classes"].items()) {
            out.classes[name];  // a class with no listed pairs is everywhere zero
            for (const auto& [key, vecs] : table.items()) {
                std::string path = "/classes/" + name + "/" + key;
                auto [cn, an] = detail::split2(key, "|", path);
                int c = detail::obj_of(C, cn, path), a = detail::obj_of(C, an, path);
                std::vector<Vec> basis;
                for (const auto& v : vecs) basis.push_back(detail::coeff_vec(v, S.ext.edim[c][a], path));
                out.classes[name][{c, a}] = basis;
            }
        }
    }
    return out;
}

inline PresentationFile parse_presentation_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ParseError("/", "cannot open file '" + filename + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("/", std::string("malformed JSON: ") + e.what());
    }
    return parse_presentation(doc);
}

inline json serialize_presentation(const PresentationFile& pf) {
    const Structure& S = pf.structure;
    const CategoryPresentation& C = S.cat;
    int n = C.nobj();
    json doc;
    doc["field"] = C.F.p;
    doc["n"] = S.n;
    doc["objects"] = C.objects;
    json hom = json::object();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (C.homdim[a][b] > 0) hom[C.objects[a] + "->" + C.objects[b]] = C.homlabel[a][b];
    doc["hom"] = hom;
    json ids = json::object();
    for (int a = 0; a < n; ++a)
        if (C.homdim[a][a] > 0) ids[C.objects[a]] = C.identity_coords[a];
    doc["identities"] = ids;
    json comp = json::object();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int g = 0; g < C.homdim[b][c]; ++g)
                    for (int f = 0; f < C.homdim[a][b]; ++f)
                        comp[C.homlabel[b][c][g] + "*" + C.homlabel[a][b][f]] = C.comp_basis(a, b, c, g, f);
    doc["compose"] = comp;
    json ext = json::object();
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            if (S.ext.edim[c][a] > 0) ext[C.objects[c] + "|" + C.objects[a]] = S.ext.edim[c][a];
    doc["ext"] = ext;
    auto dump_actions = [&](bool covariant) {
        json acts = json::object();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int k = 0; k < C.homdim[a][b]; ++k) {
                    json table = json::object();
                    for (int m = 0; m < n; ++m) {
                        const Mat& M = covariant ? S.ext.cov[a][b][k][m] : S.ext.contra[a][b][k][m];
                        if (M.rows == 0 || M.cols == 0) continue;
                        json rows = json::array();
                        for (int r = 0; r < M.rows; ++r) rows.push_back(M.row(r));
                        table[C.objects[m]] = rows;
                    }
                    if (!table.empty()) acts[C.homlabel[a][b][k]] = table;
                }
        return acts;
    };
    doc["ext_action_cov"] = dump_actions(true);
    doc["ext_action_contra"] = dump_actions(false);
    json reals = json::array();
    for (const auto& t : S.table.listed) {
        const ComplexNp2& x = S.table.reps.at({t.c, t.a, t.coords});
        json r;
        r["C"] = C.objects[t.c];
        r["A"] = C.objects[t.a];
        r["coords"] = t.coords;
        json terms = json::array();
        for (const auto& te : x.terms) {
            json names = json::array();
            for (int f : te.factors) names.push_back(C.objects[f]);
            terms.push_back(names);
        }
        r["terms"] = terms;
        json diffs = json::array();
        for (int i = 0; i <= S.n; ++i) {
            json grid = json::array();
            for (int rr = 0; rr < x.terms[i + 1].size(); ++rr) {
                json row = json::array();
                for (int cc = 0; cc < x.terms[i].size(); ++cc) row.push_back(x.diffs[i].block(rr, cc));
                grid.push_back(row);
            }
            diffs.push_back(grid);
        }
        r["diffs"] = diffs;
        reals.push_back(r);
    }
    doc["realizations"] = reals;
    if (!pf.subcategories.empty()) {
        json subs = json::object();
        for (const auto& [name, X] : pf.subcategories) {
            json arr = json::array();
            for (int m : X.members) arr.push_back(C.objects[m]);
            subs[name] = arr;
        }
        doc["subcategories"] = subs;
    }
    if (!pf.classes.empty()) {
        json cls = json::object();
        for (const auto& [name, table] : pf.classes) {
            json t = json::object();
            for (const auto& [pair, basis] : table)
                t[C.objects[pair.first] + "|" + C.objects[pair.second]] = basis;
            cls[name] = t;
        }
        doc["classes"] = cls;
    }
    return doc;
}

inline json report_to_json(const Report& rep) {
    json j;
    j["params"] = rep.params;
    json fs = json::array();
    for (const auto& f : rep.findings) {
        json e;
        e["check"] = f.check;
        e["instance"] = f.instance;
        e["ok"] = f.ok;
        if (!f.detail.empty()) e["detail"] = f.detail;
        fs.push_back(e);
    }
    j["findings"] = fs;
    j["failures"] = rep.failure_count();
    j["ok"] = rep.all_ok();
    return j;
}

}  // namespace exang
