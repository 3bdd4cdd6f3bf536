// charquo: command-line driver for the witness, orbit, count and qrep pipelines.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "charquo/braidquandle.hpp"
#include "charquo/charvar.hpp"
#include "charquo/orbit.hpp"
#include "charquo/parallel.hpp"
#include "charquo/qrep.hpp"
#include "charquo/report.hpp"
#include "charquo/witness.hpp"

using namespace charquo;

namespace {

enum Exit { kOk = 0, kPrecondition = 1, kBudget = 2, kInternal = 3 };

struct Output {
    std::string path;
    bool text = false;

    int emit(const json& j, int code) const {
        const std::string s = j.dump(2) + "\n";
        if (!path.empty()) write_atomic(path, s);
        if (text)
            render_text(j);
        else
            std::cout << s;
        return code;
    }

    static void render_text(const json& j, const std::string& prefix = "") {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) {
                std::cout << prefix << it.key() << ":\n";
                render_text(*it, prefix + "  ");
            } else {
                std::cout << prefix << it.key() << ": " << it->dump() << "\n";
            }
        }
    }
};

int error_json(const Output& out, const std::string& cmd, const std::string& msg, int code) {
    json j{{"command", cmd}, {"error", msg}, {"exit_code", code}};
    std::cerr << "charquo " << cmd << ": " << msg << "\n";
    return out.emit(j, code);
}

int cmd_witness(std::optional<u32> p, const std::string& mode, u64 min, const Output& out) {
    try {
        const u32 prime = p ? *p : find_prime(min, mode == "strict" ? PrimeMode::Strict : PrimeMode::Relaxed);
        const WitnessConfig cfg = build(prime);
        const AssumptionReport rep = check_assumptions(cfg);
        json j = to_json(cfg);
        j["assumptions"] = to_json(rep);
        if (!p) j["mode"] = mode, j["min"] = min;
        return out.emit(j, rep.certifiable() ? kOk : kPrecondition);
    } catch (const std::invalid_argument& e) {
        return error_json(out, "witness", e.what(), kPrecondition);
    }
}

int cmd_orbit(u32 p, const PipelineOptions& opt, const std::string& perms_path, bool timings, const Output& out) {
    QuotientReport rep = run_pipeline(p, opt);
    json j = to_json(rep, timings);
    if (!perms_path.empty() && rep.generators.size() == 4) {
        json perms;
        const auto& names = pipeline_generator_names();
        for (std::size_t i = 0; i < 4; ++i) perms[names[i]] = rep.generators[i];
        perms["x"] = rep.perm_x;
        perms["y"] = rep.perm_y;
        write_atomic(perms_path, perms.dump() + "\n");
    }
    int code = exit_code(rep.status);
    if (code == kOk && !rep.certified())
        code = rep.classification_method == "budget exhausted" ? kBudget : kPrecondition;
    return out.emit(j, code);
}

int cmd_count(u32 p, const std::string& orbit_path, const Output& out) {
    if (p > kCountMaxPrime)
        return error_json(out, "count",
                          "p = " + std::to_string(p) + " exceeds the counting bound " + std::to_string(kCountMaxPrime),
                          kBudget);
    try {
        const WitnessConfig cfg = build(p);
        const Params prm = params_of(cfg);
        const u64 c = count_X(prm);
        json j{{"p", p}, {"x_count", c}};
        if (!orbit_path.empty()) {
            OrbitDump d;
            try {
                d = read_dump(orbit_path);
            } catch (const std::runtime_error& e) {
                return error_json(out, "count", e.what(), kPrecondition);
            }
            if (d.p != p) return error_json(out, "count", "orbit dump is for p = " + std::to_string(d.p), kPrecondition);
            std::size_t outside = 0;
            for (const auto& k : d.keys) outside += !membership(k, prm);
            j["orbit_size"] = d.keys.size();
            j["orbit_keys_outside_X"] = outside;
            j["orbit_ratio"] = c ? double(d.keys.size()) / double(c) : 0.0;
            if (outside) return out.emit(j, kInternal);
        }
        return out.emit(j, kOk);
    } catch (const std::invalid_argument& e) {
        return error_json(out, "count", e.what(), kPrecondition);
    } catch (const std::exception& e) {
        return error_json(out, "count", e.what(), kInternal);
    }
}

struct QrepArgs {
    int n = 4, l = 2;
    bool verify = false;
    std::vector<u32> specialize;  // r q0 s0
    std::string export_path;
    int max_n = 5, max_l = 3;
};

int cmd_qrep(const QrepArgs& a, const Output& out) {
    if (a.n < 2 || a.l < 0) return error_json(out, "qrep", "need n >= 2 and l >= 0", kPrecondition);
    if (a.n > a.max_n || a.l > a.max_l)
        return error_json(out, "qrep", "(n, l) exceeds caps (" + std::to_string(a.max_n) + ", " +
                                           std::to_string(a.max_l) + ")",
                          kPrecondition);
    try {
        const RepMatrices rep = braid_matrices(a.n, a.l);
        json j{{"n", a.n}, {"l", a.l}, {"dim_V", rep.W.V.size()}, {"dim_W", rep.dim()}};
        std::optional<Intertwiner> J;
        int code = kOk;
        if (a.verify) {
            QrepVerification v = verify_rep(rep);
            J = v.J;
            j["verification"] = to_json(v);
            j["module_relations"] = {{"ke", module_relations().ke}, {"e_f", module_relations().e_f}};
            if (!v.all_pass()) code = kInternal;
        }
        std::optional<Specialization> sp;
        if (!a.specialize.empty()) {
            if (a.specialize.size() != 3) return error_json(out, "qrep", "--specialize takes r q0 s0", kPrecondition);
            if (!J && rep.dim() <= kMaxIntertwinerDim) J = intertwiner_J(rep);
            sp = specialize(rep, a.specialize[0], a.specialize[1], a.specialize[2], J);
            j["specialization"] = to_json(*sp);
            if (!sp->relations) code = kInternal;
        }
        if (!a.export_path.empty()) write_atomic(a.export_path, export_json(rep, J, sp).dump() + "\n");
        return out.emit(j, code);
    } catch (const BadSpecialization& e) {
        return error_json(out, "qrep", e.what(), kPrecondition);
    } catch (const std::invalid_argument& e) {
        return error_json(out, "qrep", e.what(), kPrecondition);
    } catch (const std::exception& e) {
        return error_json(out, "qrep", e.what(), kInternal);
    }
}

/// Fast end-to-end smoke run of every module.
int cmd_selftest(const Output& out) {
    json j;
    bool ok = true;
    auto rec = [&](const std::string& name, bool pass) {
        j[name] = pass;
        ok = ok && pass;
    };
    try {
        rec("find_prime_relaxed", find_prime(2, PrimeMode::Relaxed) == 19);
        const WitnessConfig cfg = build(19);
        const Params prm = params_of(cfg);
        rec("center_relation", [&] {
            SL2Group G{cfg.F};
            Quad<Mat2> img = apply_word(G, center_word(), cfg.P);
            Quad<Mat2> expect;
            for (int i = 0; i < 4; ++i) expect[i] = mul(cfg.F, prm.gamma, cfg.P[i], adj(cfg.F, prm.delta));
            return fast_key(cfg.F, img) == fast_key(cfg.F, expect);
        }());
        rec("membership_P", membership(from_quad(cfg.F, cfg.P), prm));
        QuotientReport r = run_pipeline(19, PipelineOptions{});
        rec("pipeline_19", r.certified());
        rec("count_matches_orbit_19", r.x_count && *r.x_count == r.n);
        rec("qbinom_identity", qbinom_identity_check(6));
        const auto mr = module_relations();
        rec("module_relations", mr.ke && mr.e_f);
        rec("qrep_4_1", verify_rep(braid_matrices(4, 1)).all_pass());
    } catch (const std::exception& e) {
        j["error"] = e.what();
        ok = false;
    }
    j["pass"] = ok;
    return out.emit(j, ok ? kOk : kInternal);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic quotients of F2 via braid actions on PSL2 quadruples"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    unsigned threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default: CHARQUO_THREADS or hardware)")->check(CLI::PositiveNumber);
    app.add_option("-o,--out", out.path, "also write the JSON result to this file");
    app.add_flag("--text", out.text, "print a text rendering instead of JSON");

    auto* w = app.add_subcommand("witness", "construct the witness configuration and check assumptions");
    std::optional<u32> wp;
    std::string mode = "relaxed";
    u64 wmin = 5;
    w->add_option("p", wp, "prime (default: search with --mode and --min)");
    w->add_option("--mode", mode, "prime search mode")->check(CLI::IsMember({"strict", "relaxed"}));
    w->add_option("--min", wmin, "search lower bound");

    auto* o = app.add_subcommand("orbit", "enumerate the orbit and classify the permutation action");
    u32 op = 19;
    PipelineOptions popt;
    std::string perms_path;
    bool timings = false;
    o->add_option("p", op, "prime")->required();
    o->add_option("--seed", popt.seed, "seed for the giant certificate search");
    o->add_option("--max-points", popt.max_points, "orbit point budget")->check(CLI::PositiveNumber);
    o->add_option("--max-trials", popt.max_trials, "certificate word budget")->check(CLI::PositiveNumber);
    o->add_option("--dump", popt.dump_path, "write orbit keys to this file");
    o->add_option("--perms", perms_path, "write generator permutations (JSON) to this file");
    o->add_flag("--timings", timings, "include stage timings in the report");
    o->add_flag("!--no-count", popt.count, "skip count_X");

    auto* c = app.add_subcommand("count", "count X by the trace model");
    u32 cp = 19;
    std::string orbit_path;
    c->add_option("p", cp, "prime")->required();
    c->add_option("--orbit", orbit_path, "orbit dump; reports the orbit/X ratio");

    auto* q = app.add_subcommand("qrep", "braid representations on highest weight spaces");
    QrepArgs qa;
    q->add_option("n", qa.n, "strands")->required();
    q->add_option("l", qa.l, "weight")->required();
    q->add_flag("--verify", qa.verify, "run the identity suite");
    q->add_option("--specialize", qa.specialize, "r q0 s0")->expected(3);
    q->add_option("--export", qa.export_path, "write matrices as JSON");
    q->add_option("--max-n", qa.max_n, "cap on n");
    q->add_option("--max-l", qa.max_l, "cap on l");

    auto* st = app.add_subcommand("selftest", "quick checks of every module");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kPrecondition;
    }
    popt.threads = threads;

    try {
        if (*w) return cmd_witness(wp, mode, wmin, out);
        if (*o) return cmd_orbit(op, popt, perms_path, timings, out);
        if (*c) return cmd_count(cp, orbit_path, out);
        if (*q) return cmd_qrep(qa, out);
        if (*st) return cmd_selftest(out);
    } catch (const std::exception& e) {
        std::cerr << "charquo: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kPrecondition;
}
