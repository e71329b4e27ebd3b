#include "atlift/suite.hpp"

#include <sstream>

#include "atlift/sampling.hpp"
#include "atlift/sweep.hpp"

namespace atlift {

using nlohmann::json;

bool Report::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

json Report::to_json() const {
    json j;
    j["command"] = command;
    j["model"] = model;
    j["model_hash"] = model_hash;
    j["seed"] = seed;
    j["pass"] = pass();
    j["checks"] = json::array();
    for (const auto& c : checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["counts"] = json::object();
        for (const auto& [k, v] : c.counts) jc["counts"][k] = v;
        jc["detail"] = c.detail;
        j["checks"].push_back(std::move(jc));
    }
    return j;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "suite " << command << " | model " << model << " | hash " << model_hash << " | seed "
        << seed << "\n";
    int failed = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name;
        for (const auto& [k, v] : c.counts) out << " " << k << "=" << v;
        out << "\n";
        if (!c.pass) ++failed;
        for (const auto& d : c.detail) out << "  ! " << d << "\n";
    }
    out << "RESULT " << (failed == 0 ? "PASS" : "FAIL") << " (" << failed << "/" << checks.size()
        << " checks failed)\n";
    return out.str();
}

std::vector<std::string> suite_commands() {
    return {"validate", "atiyah", "linfty-check", "semiregularity", "mc"};
}

namespace {

constexpr int kDetailCap = 8;

CheckResult violations_check(std::string name, const std::vector<Violation>& vs) {
    CheckResult c;
    c.name = std::move(name);
    c.pass = vs.empty();
    c.counts["violations"] = static_cast<std::int64_t>(vs.size());
    for (size_t i = 0; i < vs.size() && i < kDetailCap; ++i)
        c.detail.push_back(vs[i].code + ": " + vs[i].detail);
    if (vs.size() > kDetailCap)
        c.detail.push_back("(+" + std::to_string(vs.size() - kDetailCap) + " more)");
    return c;
}

// The model actually exercised: file sections as given, seed-drawn pieces for
// whatever a command needs beyond them.
struct Instance {
    ModelFile mf;
    std::unique_ptr<FreeComplex> drawn_cx;
    std::unique_ptr<Connection> drawn_conn;
    const BGA* A = nullptr;
    const FreeComplex* cx = nullptr;
    const Connection* conn = nullptr;
    CyclicForm F;
};

std::optional<Instance> prepare(const SuiteOptions& opt, bool need_complex, std::string& err) {
    auto mf = resolve_model(opt.model, err);
    if (!mf) return std::nullopt;
    Instance inst;
    inst.mf = std::move(*mf);
    inst.A = inst.mf.algebra.get();
    inst.cx = inst.mf.complex.get();
    inst.conn = inst.mf.connection.get();
    if (inst.mf.form) inst.F = *inst.mf.form;
    if (!need_complex) return inst;

    Rng rng = seeded(opt.seed, "suite");
    if (!inst.cx) {
        Rng r = rng.fork("complex");
        inst.drawn_cx = std::make_unique<FreeComplex>(random_complex(*inst.A, {1, 2, 1}, r));
        inst.cx = inst.drawn_cx.get();
    }
    if (!inst.conn) {
        Rng r = rng.fork("connection");
        inst.drawn_conn = std::make_unique<Connection>(random_connection(*inst.cx, r));
        inst.conn = inst.drawn_conn.get();
    }
    return inst;
}

std::string instance_hash(const Instance& inst) {
    json j = model_to_json(*inst.A, inst.cx, inst.conn, &inst.F);
    std::uint64_t h = fnv1a(j.dump());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Validation phase shared by every command. Returns false when the instance
// is not usable (the caller stops after these checks).
bool validation_checks(const Instance& inst, Report& rep) {
    rep.checks.push_back(violations_check("algebra-axioms", validate(*inst.A)));
    if (inst.cx)
        rep.checks.push_back(violations_check("complex-structure", validate_complex(*inst.cx)));
    if (inst.conn)
        rep.checks.push_back(
            violations_check("connection-bidegrees", validate_connection(*inst.conn)));
    return rep.pass();
}

// All (key, entry) basis elements of the endomorphism algebra with full
// bigraded coefficients, in the fixed enumeration order used by the
// connection identity sweep.
std::vector<std::tuple<HKey, int, int>> full_basis_items(const FreeComplex& cx) {
    std::vector<std::tuple<HKey, int, int>> items;
    for (int k = 0; k < cx.A->dim(); ++k)
        for (const auto& [l, rl] : cx.ranks)
            for (const auto& [l2, rl2] : cx.ranks)
                for (int i = 0; i < rl2; ++i)
                    for (int j = 0; j < rl; ++j) items.emplace_back(HKey{k, l, l2 - l}, i, j);
    return items;
}

void run_atiyah(const Instance& inst, const SuiteOptions& opt, Report& rep) {
    Rng rng = seeded(opt.seed, "suite");
    Rng ralt = rng.fork("connection-alt");
    Connection alt = random_connection(*inst.cx, ralt);
    std::vector<Violation> vs = verify_connection_identities(*inst.conn, alt);
    for (const char* code :
         {"cocycle-slots", "cocycle-closed", "cocycle-difference", "identity-sweep"}) {
        std::vector<Violation> mine;
        for (const auto& v : vs)
            if (v.code == code) mine.push_back(v);
        CheckResult c = violations_check(code, mine);
        if (std::string(code) == "identity-sweep")
            c.counts["items"] = static_cast<std::int64_t>(full_basis_items(*inst.cx).size());
        rep.checks.push_back(std::move(c));
    }

    // Compatibility of the cyclic pairing with the connection, over ordered
    // pairs of basis elements; exhaustive when small, seeded sample otherwise.
    auto items = full_basis_items(*inst.cx);
    const std::int64_t n = static_cast<std::int64_t>(items.size());
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    bool exhaustive = n * n <= 8192;
    if (exhaustive) {
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b) pairs.emplace_back(a, b);
    } else {
        Rng rp = rng.fork("compat-pairs");
        for (int t = 0; t < 500; ++t)
            pairs.emplace_back(static_cast<std::int64_t>(rp.below(n)),
                               static_cast<std::int64_t>(rp.below(n)));
    }
    auto hits = sweep(static_cast<std::int64_t>(pairs.size()), [&](std::int64_t t) -> std::string {
        const auto& [ia, ib] = pairs[t];
        const auto& [ka, aa, ja] = items[ia];
        const auto& [kb, ab, jb] = items[ib];
        HomForm h1 = basis_homform(*inst.cx, ka, aa, ja);
        HomForm h2 = basis_homform(*inst.cx, kb, ab, jb);
        return check_compatibility(*inst.conn, inst.F, h1, h2);
    });
    CheckResult c;
    c.name = "cyclic-compatibility";
    c.pass = hits.empty();
    c.counts["pairs"] = static_cast<std::int64_t>(pairs.size());
    c.counts["exhaustive"] = exhaustive ? 1 : 0;
    c.counts["violations"] = static_cast<std::int64_t>(hits.size());
    for (size_t i = 0; i < hits.size() && i < kDetailCap; ++i)
        c.detail.push_back("pair " + std::to_string(hits[i].index) + ": " + hits[i].what);
    if (hits.size() > kDetailCap)
        c.detail.push_back("(+" + std::to_string(hits.size() - kDetailCap) + " more)");
    rep.checks.push_back(std::move(c));
}

void run_linfty(const Instance& inst, const SuiteOptions& opt, Report& rep) {
    LInftyMorphism m = build_g(*inst.cx, *inst.conn, inst.F);
    DGLAPresentation pres(*inst.cx);
    Rng rng = seeded(opt.seed, "suite").fork("conditions");
    ConditionOptions copt;
    copt.max_n = opt.max_n;
    auto stats = check_abelian_conditions(components_of(m), pres, opt.max_n, rng, copt);
    for (const auto& st : stats) {
        CheckResult c;
        c.name = "condition-n" + std::to_string(st.n);
        c.pass = st.failures == 0;
        c.counts["tuples"] = st.tuples;
        c.counts["exhaustive"] = st.exhaustive ? 1 : 0;
        c.counts["failures"] = st.failures;
        for (size_t i = 0; i < st.sample_violations.size() && i < kDetailCap; ++i)
            c.detail.push_back(st.sample_violations[i].code + ": " +
                               st.sample_violations[i].detail);
        rep.checks.push_back(std::move(c));
    }
}

void run_semiregularity(const Instance& inst, const SuiteOptions& opt, Report& rep) {
    HomForm u = atiyah_cocycle(*inst.conn);
    DGLAPresentation pres(*inst.cx);
    const BGA& A = *inst.A;
    auto drop_above = [&](const BGAElement& x, int p) {
        BGAElement out;
        for (const auto& [k, v] : x.c)
            if (A.basis[k].bd.p <= p) out.add(k, v);
        return out;
    };
    for (int p = 1; p <= opt.p; ++p) {
        auto hits =
            sweep(static_cast<std::int64_t>(pres.dim()), [&](std::int64_t idx) -> std::string {
                HomForm f = pres.form(static_cast<int>(idx));
                BGAElement lhs = tau(u, p, hom_d(f));
                BGAElement rhs = drop_above(A.apply_d(tau(u, p, f)), p);
                BGAElement res = lhs - rhs;
                if (res.is_zero()) return {};
                return "basis " + std::to_string(idx) + ": residual " + A.elt_str(res);
            });
        CheckResult c;
        c.name = "tau-chain-p" + std::to_string(p);
        c.pass = hits.empty();
        c.counts["forms"] = pres.dim();
        c.counts["failures"] = static_cast<std::int64_t>(hits.size());
        for (size_t i = 0; i < hits.size() && i < kDetailCap; ++i) c.detail.push_back(hits[i].what);
        if (hits.size() > kDetailCap)
            c.detail.push_back("(+" + std::to_string(hits.size() - kDetailCap) + " more)");
        rep.checks.push_back(std::move(c));

        BGAElement ch = chern_cocycle(u, p);
        BGAElement res = A.apply_d(ch);
        CheckResult cc;
        cc.name = "chern-closed-p" + std::to_string(p);
        cc.pass = res.is_zero();
        cc.counts["terms"] = static_cast<std::int64_t>(ch.c.size());
        if (!cc.pass) cc.detail.push_back("residual " + A.elt_str(res));
        rep.checks.push_back(std::move(cc));
    }
}

void run_mc(const Instance& inst, const SuiteOptions& opt, Report& rep) {
    LInftyMorphism m = build_g(*inst.cx, *inst.conn, inst.F);
    DGLAPresentation pres(*inst.cx);
    Rng rng = seeded(opt.seed, "suite").fork("mc");
    ObstructionStats st = check_obstruction_annihilation(m, pres, rng, opt.trials);
    CheckResult c = violations_check("obstruction-annihilation", st.violations);
    c.counts["trials"] = st.trials;
    c.counts["order2_nonzero"] = st.order2_nonzero;
    c.counts["order3_examined"] = st.order3_examined;
    c.counts["order3_nonzero"] = st.order3_nonzero;
    c.counts["annihilated"] = st.annihilated;
    c.counts["extended"] = st.extended;
    rep.checks.push_back(std::move(c));

    // Deformations that extend to the requested order push forward to closed
    // elements of the abelian target, monomial by monomial.
    std::vector<std::vector<Rational>> Z1 = kernel_basis(pres.d_matrix(1));
    int extended = 0;
    std::vector<std::string> bad;
    std::int64_t bad_count = 0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        Rng local = rng.fork("push-" + std::to_string(trial));
        if (Z1.empty()) break;
        std::vector<Rational> v(pres.slice(1).size(), Rational(0));
        for (const auto& z : Z1) {
            Rational w = local.rational(2, 1);
            if (is_zero(w)) continue;
            for (size_t i = 0; i < v.size(); ++i) v[i] += w * z[i];
        }
        HomForm x1 = from_coords(pres, 1, v);
        if (x1.is_zero()) continue;
        MCElement x(ArtinCoefficients(1, opt.order));
        x.comp[{1, 0}] = x1;
        if (!extend_order(pres, x, opt.order).ok) continue;
        ++extended;
        auto fails = pushforward_closedness_failures(m, x, Rational(1, 2), Rational(1, 6));
        bad_count += static_cast<std::int64_t>(fails.size());
        for (const auto& mon : fails)
            if (bad.size() < kDetailCap)
                bad.push_back("trial " + std::to_string(trial) + ": monomial " + mon.str() +
                              " not closed");
    }
    CheckResult pc;
    pc.name = "pushforward-closed";
    pc.pass = bad_count == 0;
    pc.counts["trials"] = opt.trials;
    pc.counts["extended"] = extended;
    pc.counts["order"] = opt.order;
    pc.counts["failures"] = bad_count;
    pc.detail = std::move(bad);
    rep.checks.push_back(std::move(pc));
}

}  // namespace

std::optional<Report> run_suite(const std::string& command, const SuiteOptions& opt,
                                std::string& err) {
    bool known = false;
    for (const auto& c : suite_commands()) known = known || c == command;
    if (!known) {
        err = "unknown command '" + command + "'";
        return std::nullopt;
    }
    bool need_complex = command != "validate";
    auto inst = prepare(opt, need_complex, err);
    if (!inst) return std::nullopt;

    Report rep;
    rep.command = command;
    rep.model = inst->mf.name;
    rep.model_hash = instance_hash(*inst);
    rep.seed = opt.seed;

    if (!validation_checks(*inst, rep)) return rep;
    if (command == "validate") return rep;

    if (command == "atiyah")
        run_atiyah(*inst, opt, rep);
    else if (command == "linfty-check")
        run_linfty(*inst, opt, rep);
    else if (command == "semiregularity")
        run_semiregularity(*inst, opt, rep);
    else if (command == "mc")
        run_mc(*inst, opt, rep);
    return rep;
}

}  // namespace atlift
