#include "atlift/model_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

namespace atlift {

using nlohmann::json;

namespace {

bool known_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where,
                std::string& err) {
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* want : keys)
            if (k == want) ok = true;
        if (!ok) {
            err = where + ": unknown key '" + k + "'";
            return false;
        }
    }
    return true;
}

std::optional<Rational> get_rat(const json& j, const std::string& where, std::string& err) {
    if (!j.is_string()) {
        err = where + ": expected a rational string";
        return std::nullopt;
    }
    auto r = parse_rational(j.get<std::string>());
    if (!r) err = where + ": bad rational '" + j.get<std::string>() + "'";
    return r;
}

// [[k, "c"], ...] over basis indices.
std::optional<BGAElement> get_elt(const json& j, int dim, const std::string& where,
                                  std::string& err) {
    if (!j.is_array()) {
        err = where + ": expected an array of [index, coeff] pairs";
        return std::nullopt;
    }
    BGAElement out;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer()) {
            err = where + ": bad term";
            return std::nullopt;
        }
        int k = term[0].get<int>();
        if (k < 0 || k >= dim) {
            err = where + ": basis index " + std::to_string(k) + " out of range";
            return std::nullopt;
        }
        auto c = get_rat(term[1], where, err);
        if (!c) return std::nullopt;
        out.add(k, *c);
    }
    return out;
}

std::optional<BGA> parse_algebra(const json& j, std::string& err) {
    if (!j.is_object() || !known_keys(j, {"basis", "unit", "product", "partial", "delbar"},
                                      "algebra", err))
        return err.empty() ? (err = "algebra: expected an object", std::nullopt) : std::nullopt;
    if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].empty()) {
        err = "algebra.basis: expected a nonempty array";
        return std::nullopt;
    }
    BGA A;
    for (const auto& b : j["basis"]) {
        if (!b.is_object() || !known_keys(b, {"name", "p", "q"}, "algebra.basis", err))
            return std::nullopt;
        if (!b.contains("name") || !b["name"].is_string() || !b.contains("p") ||
            !b["p"].is_number_integer() || !b.contains("q") || !b["q"].is_number_integer()) {
            err = "algebra.basis: each entry needs name, p, q";
            return std::nullopt;
        }
        A.basis.push_back({b["name"].get<std::string>(), {b["p"].get<int>(), b["q"].get<int>()}});
    }
    int dim = A.dim();
    if (!j.contains("unit") || !j["unit"].is_number_integer()) {
        err = "algebra.unit: expected a basis index";
        return std::nullopt;
    }
    A.unit = j["unit"].get<int>();
    if (A.unit < 0 || A.unit >= dim) {
        err = "algebra.unit: index out of range";
        return std::nullopt;
    }

    A.product_table.assign(static_cast<size_t>(dim) * dim, BGAElement{});
    if (j.contains("product")) {
        if (!j["product"].is_array()) {
            err = "algebra.product: expected an array";
            return std::nullopt;
        }
        std::set<std::pair<int, int>> seen;
        for (const auto& row : j["product"]) {
            if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
                !row[1].is_number_integer()) {
                err = "algebra.product: expected [i, j, terms] rows";
                return std::nullopt;
            }
            int i = row[0].get<int>(), jj = row[1].get<int>();
            if (i < 0 || i >= dim || jj < 0 || jj >= dim) {
                err = "algebra.product: index out of range";
                return std::nullopt;
            }
            if (!seen.insert({i, jj}).second) {
                err = "algebra.product: duplicate entry (" + std::to_string(i) + "," +
                      std::to_string(jj) + ")";
                return std::nullopt;
            }
            auto e = get_elt(row[2], dim, "algebra.product", err);
            if (!e) return std::nullopt;
            A.prod(i, jj) = *e;
        }
    }

    auto parse_diff = [&](const char* key, std::vector<BGAElement>& table) {
        table.assign(dim, BGAElement{});
        if (!j.contains(key)) return true;
        if (!j[key].is_array()) {
            err = std::string("algebra.") + key + ": expected an array";
            return false;
        }
        std::set<int> seen;
        for (const auto& row : j[key]) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number_integer()) {
                err = std::string("algebra.") + key + ": expected [i, terms] rows";
                return false;
            }
            int i = row[0].get<int>();
            if (i < 0 || i >= dim) {
                err = std::string("algebra.") + key + ": index out of range";
                return false;
            }
            if (!seen.insert(i).second) {
                err = std::string("algebra.") + key + ": duplicate entry " + std::to_string(i);
                return false;
            }
            auto e = get_elt(row[1], dim, std::string("algebra.") + key, err);
            if (!e) return false;
            table[i] = *e;
        }
        return true;
    };
    if (!parse_diff("partial", A.partial_table)) return std::nullopt;
    if (!parse_diff("delbar", A.delbar_table)) return std::nullopt;
    return A;
}

std::optional<FreeComplex> parse_complex(const json& j, const BGA& A, std::string& err) {
    if (!j.is_object() || !known_keys(j, {"degrees", "delta"}, "complex", err))
        return err.empty() ? (err = "complex: expected an object", std::nullopt) : std::nullopt;
    FreeComplex cx;
    cx.A = &A;
    if (!j.contains("degrees") || !j["degrees"].is_array() || j["degrees"].empty()) {
        err = "complex.degrees: expected a nonempty array";
        return std::nullopt;
    }
    for (const auto& d : j["degrees"]) {
        if (!d.is_object() || !known_keys(d, {"deg", "rank"}, "complex.degrees", err))
            return std::nullopt;
        if (!d.contains("deg") || !d["deg"].is_number_integer() || !d.contains("rank") ||
            !d["rank"].is_number_integer() || d["rank"].get<int>() <= 0) {
            err = "complex.degrees: each entry needs deg and a positive rank";
            return std::nullopt;
        }
        int deg = d["deg"].get<int>();
        if (cx.ranks.count(deg)) {
            err = "complex.degrees: duplicate degree " + std::to_string(deg);
            return std::nullopt;
        }
        cx.ranks[deg] = d["rank"].get<int>();
    }
    if (j.contains("delta")) {
        if (!j["delta"].is_array()) {
            err = "complex.delta: expected an array";
            return std::nullopt;
        }
        for (const auto& blk : j["delta"]) {
            if (!blk.is_object() || !known_keys(blk, {"deg", "rows"}, "complex.delta", err))
                return std::nullopt;
            if (!blk.contains("deg") || !blk["deg"].is_number_integer() || !blk.contains("rows") ||
                !blk["rows"].is_array()) {
                err = "complex.delta: each block needs deg and rows";
                return std::nullopt;
            }
            int deg = blk["deg"].get<int>();
            int rl = cx.rank(deg), rt = cx.rank(deg + 1);
            if (rl == 0 || rt == 0) {
                err = "complex.delta: block at degree " + std::to_string(deg) +
                      " has no source or target";
                return std::nullopt;
            }
            if (cx.delta.count(deg)) {
                err = "complex.delta: duplicate block at degree " + std::to_string(deg);
                return std::nullopt;
            }
            auto& rows = cx.delta[deg];
            if (static_cast<int>(blk["rows"].size()) != rt) {
                err = "complex.delta: block at degree " + std::to_string(deg) + " needs " +
                      std::to_string(rt) + " rows";
                return std::nullopt;
            }
            rows.assign(rt, std::vector<BGAElement>(rl));
            for (int i = 0; i < rt; ++i) {
                const auto& r = blk["rows"][i];
                if (!r.is_array() || static_cast<int>(r.size()) != rl) {
                    err = "complex.delta: row " + std::to_string(i) + " at degree " +
                          std::to_string(deg) + " needs " + std::to_string(rl) + " entries";
                    return std::nullopt;
                }
                for (int c = 0; c < rl; ++c) {
                    auto v = get_rat(r[c], "complex.delta", err);
                    if (!v) return std::nullopt;
                    if (!is_zero(*v)) rows[i][c] = BGAElement::single(A.unit, *v);
                }
            }
        }
    }
    return cx;
}

std::optional<Connection> parse_connection(const json& j, const FreeComplex& cx, std::string& err) {
    if (!j.is_object() || !known_keys(j, {"gamma"}, "connection", err))
        return err.empty() ? (err = "connection: expected an object", std::nullopt) : std::nullopt;
    Connection conn;
    conn.cx = &cx;
    if (!j.contains("gamma") || !j["gamma"].is_array()) {
        err = "connection.gamma: expected an array of blocks";
        return std::nullopt;
    }
    for (const auto& blk : j["gamma"]) {
        if (!blk.is_object() || !known_keys(blk, {"deg", "rows"}, "connection.gamma", err))
            return std::nullopt;
        if (!blk.contains("deg") || !blk["deg"].is_number_integer() || !blk.contains("rows") ||
            !blk["rows"].is_array()) {
            err = "connection.gamma: each block needs deg and rows";
            return std::nullopt;
        }
        int deg = blk["deg"].get<int>();
        int r = cx.rank(deg);
        if (r == 0) {
            err = "connection.gamma: no module at degree " + std::to_string(deg);
            return std::nullopt;
        }
        if (conn.gamma.count(deg)) {
            err = "connection.gamma: duplicate block at degree " + std::to_string(deg);
            return std::nullopt;
        }
        auto& rows = conn.gamma[deg];
        if (static_cast<int>(blk["rows"].size()) != r) {
            err = "connection.gamma: block at degree " + std::to_string(deg) + " needs " +
                  std::to_string(r) + " rows";
            return std::nullopt;
        }
        rows.assign(r, std::vector<BGAElement>(r));
        for (int i = 0; i < r; ++i) {
            const auto& row = blk["rows"][i];
            if (!row.is_array() || static_cast<int>(row.size()) != r) {
                err = "connection.gamma: row " + std::to_string(i) + " at degree " +
                      std::to_string(deg) + " needs " + std::to_string(r) + " entries";
                return std::nullopt;
            }
            for (int c = 0; c < r; ++c) {
                auto e = get_elt(row[c], cx.A->dim(), "connection.gamma", err);
                if (!e) return std::nullopt;
                rows[i][c] = *e;
            }
        }
    }
    // Missing blocks mean zero; fill for shape completeness.
    for (const auto& [l, r] : cx.ranks)
        if (!conn.gamma.count(l)) conn.gamma[l].assign(r, std::vector<BGAElement>(r));
    return conn;
}

}  // namespace

std::optional<ModelFile> parse_model(const json& j, std::string& err) {
    if (!j.is_object() || !known_keys(j, {"name", "algebra", "complex", "connection", "form"},
                                      "model", err)) {
        if (err.empty()) err = "model: expected an object";
        return std::nullopt;
    }
    if (!j.contains("algebra")) {
        err = "model: missing algebra";
        return std::nullopt;
    }
    ModelFile mf;
    if (j.contains("name")) {
        if (!j["name"].is_string()) {
            err = "model.name: expected a string";
            return std::nullopt;
        }
        mf.name = j["name"].get<std::string>();
    }
    auto A = parse_algebra(j["algebra"], err);
    if (!A) return std::nullopt;
    mf.algebra = std::make_unique<BGA>(std::move(*A));
    if (mf.name.empty()) mf.name = mf.algebra->name.empty() ? "model" : mf.algebra->name;
    mf.algebra->name = mf.name;

    if (j.contains("complex")) {
        auto cx = parse_complex(j["complex"], *mf.algebra, err);
        if (!cx) return std::nullopt;
        mf.complex = std::make_unique<FreeComplex>(std::move(*cx));
        mf.complex->A = mf.algebra.get();
    }
    if (j.contains("connection")) {
        if (!mf.complex) {
            err = "connection: requires a complex section";
            return std::nullopt;
        }
        auto conn = parse_connection(j["connection"], *mf.complex, err);
        if (!conn) return std::nullopt;
        mf.connection = std::make_unique<Connection>(std::move(*conn));
        mf.connection->cx = mf.complex.get();
    }
    if (j.contains("form")) {
        const auto& f = j["form"];
        if (!f.is_object() || !known_keys(f, {"a", "b"}, "form", err)) return std::nullopt;
        if (!f.contains("a") || !f.contains("b")) {
            err = "form: needs a and b";
            return std::nullopt;
        }
        auto a = get_rat(f["a"], "form.a", err);
        if (!a) return std::nullopt;
        auto b = get_rat(f["b"], "form.b", err);
        if (!b) return std::nullopt;
        mf.form = CyclicForm{*a, *b};
    }
    return mf;
}

std::optional<ModelFile> parse_model_file(const std::string& path, std::string& err) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        err = "not a regular file: " + path;
        return std::nullopt;
    }
    std::ifstream in(path);
    if (!in) {
        err = "cannot open " + path;
        return std::nullopt;
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        err = path + ": invalid JSON";
        return std::nullopt;
    }
    return parse_model(j, err);
}

std::optional<ModelFile> resolve_model(const std::string& spec, std::string& err) {
    if (auto A = canned_model(spec)) {
        ModelFile mf;
        mf.name = A->name;
        mf.algebra = std::make_unique<BGA>(std::move(*A));
        return mf;
    }
    if (spec.find('/') != std::string::npos || spec.find(".model") != std::string::npos ||
        spec.find(".json") != std::string::npos) {
        std::vector<std::string> candidates{spec};
        if (spec.find('/') == std::string::npos) {
            candidates.push_back("models/" + spec);
            if (const char* d = std::getenv("ATLIFT_MODELS_DIR"))
                candidates.push_back(std::string(d) + "/" + spec);
        }
        for (const auto& path : candidates) {
            std::error_code ec;
            if (std::filesystem::is_regular_file(path, ec)) return parse_model_file(path, err);
        }
        return parse_model_file(spec, err);
    }
    err = "unknown model '" + spec + "'; expected a canned name (";
    bool first = true;
    for (const auto& n : canned_model_names()) {
        if (!first) err += ", ";
        err += n;
        first = false;
    }
    err += ") or a path to a model file";
    return std::nullopt;
}

json model_to_json(const BGA& A, const FreeComplex* cx, const Connection* conn,
                   const CyclicForm* form) {
    json j;
    j["name"] = A.name;
    json alg;
    for (const auto& b : A.basis) alg["basis"].push_back({{"name", b.name}, {"p", b.bd.p}, {"q", b.bd.q}});
    alg["unit"] = A.unit;
    auto elt_terms = [](const BGAElement& e) {
        json terms = json::array();
        for (const auto& [k, v] : e.c) terms.push_back({k, rat_str(v)});
        return terms;
    };
    alg["product"] = json::array();
    for (int i = 0; i < A.dim(); ++i)
        for (int jj = 0; jj < A.dim(); ++jj)
            if (!A.prod(i, jj).is_zero()) alg["product"].push_back({i, jj, elt_terms(A.prod(i, jj))});
    alg["partial"] = json::array();
    alg["delbar"] = json::array();
    for (int i = 0; i < A.dim(); ++i) {
        if (!A.partial_table[i].is_zero()) alg["partial"].push_back({i, elt_terms(A.partial_table[i])});
        if (!A.delbar_table[i].is_zero()) alg["delbar"].push_back({i, elt_terms(A.delbar_table[i])});
    }
    j["algebra"] = std::move(alg);

    if (cx) {
        json c;
        c["degrees"] = json::array();
        for (const auto& [deg, r] : cx->ranks) c["degrees"].push_back({{"deg", deg}, {"rank", r}});
        c["delta"] = json::array();
        for (const auto& [deg, rows] : cx->delta) {
            json rws = json::array();
            for (const auto& row : rows) {
                json r = json::array();
                for (const auto& e : row) {
                    Rational v(0);
                    if (!e.is_zero()) v = e.c.begin()->second;
                    r.push_back(rat_str(v));
                }
                rws.push_back(std::move(r));
            }
            c["delta"].push_back({{"deg", deg}, {"rows", std::move(rws)}});
        }
        j["complex"] = std::move(c);
    }
    if (conn) {
        json g = json::array();
        for (const auto& [deg, rows] : conn->gamma) {
            json rws = json::array();
            for (const auto& row : rows) {
                json r = json::array();
                for (const auto& e : row) r.push_back(elt_terms(e));
                rws.push_back(std::move(r));
            }
            g.push_back({{"deg", deg}, {"rows", std::move(rws)}});
        }
        j["connection"] = {{"gamma", std::move(g)}};
    }
    if (form) j["form"] = {{"a", rat_str(form->a)}, {"b", rat_str(form->b)}};
    return j;
}

}  // namespace atlift
