#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stretchpack/adversary.hpp"
#include "stretchpack/audit.hpp"
#include "stretchpack/engine.hpp"
#include "stretchpack/generator.hpp"
#include "stretchpack/io.hpp"
#include "stretchpack/oracle.hpp"
#include "stretchpack/rng.hpp"

namespace {

using namespace stretchpack;

// Exit codes are the machine contract:
// 0 ok, 1 algorithm failure or invariant violation, 2 infeasible instance,
// 3 parse or I/O error, 4 resource limit exceeded.
enum ExitCode { kOk = 0, kFailure = 1, kInfeasible = 2, kParse = 3, kResource = 4 };

OracleConfig oracle_config_from_env() {
    OracleConfig cfg;
    if (const char* env = std::getenv("STRETCHPACK_ORACLE_LIMIT")) {
        try {
            int limit = std::stoi(env);
            if (limit < 1) throw std::invalid_argument("nonpositive");
            cfg.max_items = limit;
        } catch (const std::exception&) {
            throw ParseError("STRETCHPACK_ORACLE_LIMIT must be a positive integer");
        }
    }
    return cfg;
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "stretch15") return Algorithm::Stretch15;
    if (name == "firstfit") return Algorithm::FirstFit;
    throw ParseError("unknown algorithm: " + name + " (want stretch15 or firstfit)");
}

void print_ratio(const RunResult& result, const Instance& inst, const OracleConfig& ocfg) {
    if (inst.items.empty()) {
        std::cout << "ratio undefined (empty instance)\n";
        return;
    }
    if (inst.items.size() > static_cast<std::size_t>(ocfg.max_items)) {
        std::cout << "ratio unavailable (n > oracle limit " << ocfg.max_items << ")\n";
        return;
    }
    std::vector<Rat> sizes;
    for (const Item& it : inst.items) sizes.push_back(it.size);
    Rat opt = min_capacity(sizes, inst.m, ocfg);
    if (opt.is_zero()) {
        std::cout << "ratio undefined (offline optimum 0)\n";
        return;
    }
    std::cout << "optimum " << format_rational(opt) << "\n";
    std::cout << "ratio " << format_rational(result.max_load / opt) << "\n";
}

int cmd_pack(const std::string& in, const std::string& alg_name, const std::string& trace_path,
             bool audit) {
    Instance inst = load_instance(in);
    Algorithm alg = algorithm_from_name(alg_name);
    AuditedRun ar;
    if (audit) {
        ar = audited_run(inst, alg);
    } else {
        ar.result = run(inst, alg);
    }

    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw ParseError("cannot open " + trace_path + " for writing");
        write_trace(out, inst, ar.result, ar.violations);
    }

    std::cout << "max_load " << format_rational(ar.result.max_load) << "\n";
    try {
        print_ratio(ar.result, inst, oracle_config_from_env());
    } catch (const ResourceLimitError& e) {
        std::cout << "ratio unavailable (" << e.what() << ")\n";
    }
    for (const ViolationAt& v : ar.violations) {
        std::cout << "violation " << v.violation.clause << " after item " << v.item_index
                  << ": " << v.violation.detail << "\n";
    }
    std::size_t run_violations = 0;
    if (audit) {
        OracleConfig no_oracle;
        no_oracle.max_items = 0;  // ratio already reported above
        for (const Violation& v : check_run(ar.result, inst, no_oracle).violations) {
            std::cout << "violation " << v.clause << ": " << v.detail << "\n";
            ++run_violations;
        }
    }
    if (ar.result.failed_at) {
        std::cout << "FAIL: capacity exceeded at item " << *ar.result.failed_at << "\n";
        return kFailure;
    }
    if (!ar.violations.empty() || run_violations > 0) return kFailure;
    std::cout << "ok\n";
    return kOk;
}

int cmd_verify(const std::string& in, const std::string& cap_str) {
    Instance inst = load_instance(in);
    OracleConfig ocfg = oracle_config_from_env();
    bool ok;
    Rat cap = parse_rational(cap_str);
    if (cap == kOptCapacity) {
        ok = validate(inst, ocfg);
    } else {
        std::vector<Rat> sizes;
        for (const Item& it : inst.items) sizes.push_back(it.size);
        ok = feasible(sizes, inst.m, cap, ocfg).has_value();
    }
    if (!ok) {
        std::cout << "infeasible at capacity " << format_rational(cap) << "\n";
        return kInfeasible;
    }
    std::cout << "valid at capacity " << format_rational(cap) << "\n";
    return kOk;
}

int cmd_generate(const GenProfile& profile, const std::string& out_path) {
    Instance inst = generate(profile);
    save_instance(out_path, inst);
    std::cout << "wrote " << out_path << " (m=" << inst.m << ", n=" << inst.items.size()
              << ")\n";
    return kOk;
}

int cmd_fuzz(std::uint64_t count, int m_max, int n_max, std::uint64_t seed) {
    if (m_max < 1) throw ParseError("--m-max must be positive");
    if (n_max < 0) throw ParseError("--n-max must be nonnegative");
    SplitMix64 master(seed);
    for (std::uint64_t k = 0; k < count; ++k) {
        GenProfile profile;
        profile.pattern = GenPattern::PackFirst;
        profile.m = 1 + static_cast<int>(master.below(m_max));
        profile.n = static_cast<int>(master.below(n_max + 1));
        profile.seed = master.next();
        profile.order = ArrivalOrder::Random;
        Instance inst = generate(profile);

        std::string problem;
        if (!inst.witness || !verify_packing(inst.items, inst.m, *inst.witness)) {
            problem = "generated witness does not verify";
        }
        AuditedRun ar = audited_run(inst, Algorithm::Stretch15);
        if (problem.empty() && ar.result.failed_at) {
            problem = "stretch15 failed at item " + std::to_string(*ar.result.failed_at);
        }
        if (problem.empty() && ar.result.max_load > kAlgoCapacity) {
            problem = "final load " + ar.result.max_load.str() + " exceeds 18";
        }
        if (problem.empty() && !ar.violations.empty()) {
            problem = "invariant " + ar.violations.front().violation.clause + ": " +
                      ar.violations.front().violation.detail;
        }
        if (!problem.empty()) {
            std::cout << "fuzz violation on instance " << k << ": " << problem << "\n";
            std::cout << "reproduce:\n"
                      << "  stretchpack generate --pattern packfirst --m " << profile.m
                      << " --n " << profile.n << " --seed " << profile.seed
                      << " --order arrival-random -o repro.inst\n"
                      << "  stretchpack pack -i repro.inst --audit\n";
            return kFailure;
        }
    }
    std::cout << "fuzz ok: " << count << " instances clean\n";
    return kOk;
}

int cmd_adversary(int m, int g, int depth, const std::string& alg_name,
                  std::uint64_t budget) {
    SearchConfig cfg;
    cfg.m = m;
    cfg.granularity = g;
    cfg.max_depth = depth;
    cfg.packer = algorithm_from_name(alg_name);
    cfg.node_budget = budget;
    SearchResult res = search(cfg);

    std::cout << "forced_load " << format_rational(res.forced_load) << "\n";
    std::cout << "sequence";
    for (const Rat& s : res.best_sequence) std::cout << " " << format_rational(s);
    std::cout << "\n";
    std::cout << "nodes " << res.nodes_expanded << "\n";
    if (res.packer_failures > 0) {
        std::cout << "packer failures " << res.packer_failures << "\n";
    }
    if (res.budget_exhausted) {
        std::cout << "node budget exhausted; result is best-so-far\n";
        return kResource;
    }
    return kOk;
}

int cmd_trace_check(const std::string& trace_path, const std::string& in) {
    Instance inst = load_instance(in);
    std::ifstream trace(trace_path);
    if (!trace) throw ParseError("cannot open " + trace_path);
    std::string err = trace_check(trace, inst);
    if (!err.empty()) {
        std::cout << "trace mismatch: " << err << "\n";
        return kFailure;
    }
    std::cout << "trace ok\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stretchpack: online bin stretching at factor 1.5, with an exact "
                 "offline oracle, generators, a minimax adversary and invariant audits"};
    app.require_subcommand(1);

    auto* pack = app.add_subcommand("pack", "run an online packer on an instance file");
    std::string pack_in, pack_alg = "stretch15", pack_trace;
    bool pack_audit = false;
    pack->add_option("-i,--input", pack_in, "instance file")->required();
    pack->add_option("-a,--algorithm", pack_alg, "stretch15 or firstfit");
    pack->add_option("-t,--trace", pack_trace, "write a trace file");
    pack->add_flag("--audit", pack_audit, "check invariants after every placement");

    auto* verify = app.add_subcommand("verify", "decide offline feasibility");
    std::string verify_in, verify_cap = "12";
    verify->add_option("-i,--input", verify_in, "instance file")->required();
    verify->add_option("--cap", verify_cap, "capacity (default 12)");

    auto* gen = app.add_subcommand("generate", "emit a valid instance with witness");
    std::string gen_pattern, gen_order = "as-constructed", gen_out;
    int gen_m = 1, gen_n = 0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--pattern", gen_pattern, "packfirst|tightness|mediumflood|largepairs")
        ->required();
    gen->add_option("--m", gen_m, "bin count")->required();
    gen->add_option("--n", gen_n, "item count (packfirst)");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--order", gen_order, "arrival-random|asc|desc|as-constructed");
    gen->add_option("-o,--output", gen_out, "output file")->required();

    auto* fuzz = app.add_subcommand("fuzz", "generate/run/audit loop");
    std::uint64_t fuzz_count = 100, fuzz_seed = 1;
    int fuzz_m_max = 8, fuzz_n_max = 24;
    fuzz->add_option("--count", fuzz_count, "instances to try");
    fuzz->add_option("--m-max", fuzz_m_max, "max bin count");
    fuzz->add_option("--n-max", fuzz_n_max, "max item count");
    fuzz->add_option("--seed", fuzz_seed, "master seed");

    auto* adv = app.add_subcommand("adversary", "minimax search against a packer");
    int adv_m = 1, adv_g = 1, adv_depth = 0;
    std::string adv_alg = "stretch15";
    std::uint64_t adv_budget = 0;
    adv->add_option("--m", adv_m, "bin count")->required();
    adv->add_option("--granularity", adv_g, "size menu {12j/g}")->required();
    adv->add_option("--depth", adv_depth, "max items sent")->required();
    adv->add_option("-a,--algorithm", adv_alg, "stretch15 or firstfit");
    adv->add_option("--budget", adv_budget, "node budget, 0 = unlimited");

    auto* tcheck = app.add_subcommand("trace-check", "replay an instance against a trace");
    std::string tc_trace, tc_in;
    tcheck->add_option("-t,--trace", tc_trace, "trace file")->required();
    tcheck->add_option("-i,--input", tc_in, "instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (app.got_subcommand(pack)) return cmd_pack(pack_in, pack_alg, pack_trace, pack_audit);
        if (app.got_subcommand(verify)) return cmd_verify(verify_in, verify_cap);
        if (app.got_subcommand(gen)) {
            GenProfile profile;
            profile.pattern = pattern_from_name(gen_pattern);
            profile.m = gen_m;
            profile.n = gen_n;
            profile.seed = gen_seed;
            profile.order = order_from_name(gen_order);
            return cmd_generate(profile, gen_out);
        }
        if (app.got_subcommand(fuzz)) {
            return cmd_fuzz(fuzz_count, fuzz_m_max, fuzz_n_max, fuzz_seed);
        }
        if (app.got_subcommand(adv)) {
            return cmd_adversary(adv_m, adv_g, adv_depth, adv_alg, adv_budget);
        }
        if (app.got_subcommand(tcheck)) return cmd_trace_check(tc_trace, tc_in);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kParse;
}
