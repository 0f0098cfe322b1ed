// Copyright 2026 The qdet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "grid.hpp"
#include "qdet/eavesdrop.hpp"
#include "qdet/joint.hpp"
#include "qdet/oracle.hpp"
#include "qdet/recursion.hpp"
#include "qdet/replica.hpp"
#include "table.hpp"

namespace qdet::cli {

namespace {

struct CommonOptions {
    std::string format = "csv";
    std::string output;
    uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

void add_common(CLI::App* sub, CommonOptions& common) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", common.output, "Output file (default: standard output)");
    sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads (0: available parallelism)");
}

std::vector<std::string> dist_columns(const std::string& prefix = "pi_") {
    std::vector<std::string> cols;
    for (Label s : kAllLabels) {
        cols.push_back(prefix + to_char(s));
    }
    return cols;
}

void append_dist(std::vector<Cell>& row, const Dist5& d) {
    for (double v : d.v) {
        row.emplace_back(v);
    }
}

template <class... Cols>
std::vector<std::string> concat(std::vector<std::string> a, const Cols&... rest) {
    (a.insert(a.end(), rest.begin(), rest.end()), ...);
    return a;
}

void check_unit_grid(const std::vector<double>& grid, const char* name) {
    for (double v : grid) {
        if (!(v >= 0 && v <= 1)) {
            throw std::invalid_argument(std::string(name) + " values must lie in [0, 1]");
        }
    }
}

// ---- iterate ---------------------------------------------------------------

struct IterateOptions {
    double p = 0, f = 0;
    int t = 0;
    bool z_only = false;
};

Table cmd_iterate(const IterateOptions& o) {
    ModelParams{o.p, o.f, o.t}.validate();
    Table table;
    table.columns = concat(std::vector<std::string>{"t", "p", "f"}, dist_columns());
    const auto seq = iterate(initial_condition(o.f, o.z_only), o.p, o.t);
    for (size_t k = 0; k < seq.size(); ++k) {
        std::vector<Cell> row{static_cast<int64_t>(k), o.p, o.f};
        append_dist(row, seq[k]);
        table.add(std::move(row));
    }
    return table;
}

// ---- phase-diagram ---------------------------------------------------------

struct PhaseOptions {
    std::string p_grid, f_grid, t_list;
    long max_iterations = 100000;
    double tolerance = 1e-12;
};

Table cmd_phase_diagram(const PhaseOptions& o, const CommonOptions& common) {
    const auto ps = parse_grid(o.p_grid);
    const auto fs = parse_grid(o.f_grid);
    const auto ts = parse_int_list(o.t_list);
    check_unit_grid(ps, "p");
    check_unit_grid(fs, "f");
    Table table;
    table.columns = concat(std::vector<std::string>{"p", "f", "status", "phase", "one_minus_pi_n"}, dist_columns(),
                           std::vector<std::string>{"iterations", "converged"});
    for (int t : ts) {
        table.columns.push_back("one_minus_pi_n_t" + std::to_string(t));
    }
    table.columns.push_back("error");

    std::vector<std::vector<Cell>> rows(ps.size() * fs.size());
    parallel_for(rows.size(), common.threads, [&](size_t i) {
        const double p = ps[i / fs.size()], f = fs[i % fs.size()];
        std::vector<Cell>& row = rows[i];
        row = {p, f};
        try {
            const PhaseReport rep = classify_phase(p, f, {o.tolerance, o.max_iterations});
            row.emplace_back(to_string(rep.status));
            row.emplace_back(rep.status == PhaseStatus::Ok ? Cell(to_string(rep.phase)) : Cell());
            row.emplace_back(1 - rep.limit[Label::N]);
            append_dist(row, rep.limit);
            row.emplace_back(static_cast<int64_t>(rep.iterations));
            row.emplace_back(rep.converged);
            for (int t : ts) {
                row.emplace_back(1 - iterate(initial_condition(f), p, t).back()[Label::N]);
            }
            row.emplace_back(std::string());
        } catch (const std::exception& e) {
            row.resize(table.columns.size() - 1);
            row.emplace_back(std::string(e.what()));
        }
    });
    for (auto& row : rows) {
        table.add(std::move(row));
    }
    return table;
}

// ---- fixed-points ----------------------------------------------------------

Table cmd_fixed_points(const std::string& p_grid) {
    const auto ps = parse_grid(p_grid);
    Table table;
    table.columns = concat(std::vector<std::string>{"p", "kind", "stable", "marginal", "leading_eigenvalue_modulus"},
                           dist_columns(), std::vector<std::string>{"error"});
    for (double p : ps) {
        try {
            for (const FixedPointReport& fp : closed_form_fixed_points(p)) {
                std::vector<Cell> row{p, to_string(fp.kind), fp.stable, fp.marginal, fp.leading_eigenvalue_modulus};
                append_dist(row, fp.point);
                row.emplace_back(std::string());
                table.add(std::move(row));
            }
        } catch (const std::exception& e) {
            std::vector<Cell> row(table.columns.size() - 1);
            row[0] = p;
            row.emplace_back(std::string(e.what()));
            table.add(std::move(row));
        }
    }
    return table;
}

// ---- eavesdrop -------------------------------------------------------------

struct EavesdropOptions {
    std::string r_grid, f_grid;
    std::optional<int> t;
};

Table cmd_eavesdrop(const EavesdropOptions& o) {
    const auto rs = parse_grid(o.r_grid);
    const auto fs = parse_grid(o.f_grid);
    check_unit_grid(rs, "r");
    check_unit_grid(fs, "f");
    if (o.t && *o.t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    Table table;
    table.columns = concat(std::vector<std::string>{"r", "f"}, dist_columns(),
                           std::vector<std::string>{"purified", "y", "scaled", "scaling_reference", "scaling_leading"});
    if (o.t) {
        table.columns.push_back("pi_n_t" + std::to_string(*o.t));
    }
    for (double f : fs) {
        for (double r : rs) {
            const EavesdropFixedPoint fp = eavesdrop_fixed_point({r, f});
            std::vector<Cell> row{r, f};
            append_dist(row, fp.point);
            row.emplace_back(fp.purified);
            const double one[] = {f}, rr[] = {r};
            const auto scaling = scaling_collapse(one, rr);
            if (scaling.empty()) {
                row.insert(row.end(), 4, Cell());
            } else {
                row.insert(row.end(), {scaling[0].y, scaling[0].scaled, scaling[0].reference, scaling[0].leading});
            }
            if (o.t) {
                row.emplace_back(iterate_eavesdrop({r, f}, *o.t).back()[Label::N]);
            }
            table.add(std::move(row));
        }
    }
    return table;
}

// ---- replica ---------------------------------------------------------------

struct ReplicaOptions {
    std::string p_grid, f_grid;
    std::optional<int> t;
    bool pc_only = false;
};

Table cmd_replica(const ReplicaOptions& o, const CommonOptions& common) {
    const auto fs = parse_grid(o.f_grid);
    check_unit_grid(fs, "f");
    std::vector<Cell> pcs(fs.size());
    parallel_for(fs.size(), common.threads, [&](size_t i) {
        if (fs[i] > 0 && fs[i] < 1) {
            pcs[i] = compute_pc(fs[i]);
        }
    });
    Table table;
    if (o.pc_only) {
        table.columns = {"f", "p_c"};
        for (size_t i = 0; i < fs.size(); ++i) {
            table.add({fs[i], pcs[i]});
        }
        return table;
    }
    if (o.p_grid.empty()) {
        throw std::invalid_argument("--p-grid is required unless --pc is given");
    }
    const auto ps = parse_grid(o.p_grid);
    check_unit_grid(ps, "p");
    if (o.t && *o.t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    table.columns = {"p", "f", "I2"};
    if (o.t) {
        table.columns.push_back("I2_t" + std::to_string(*o.t));
    }
    table.columns.push_back("p_c");
    for (double p : ps) {
        for (size_t i = 0; i < fs.size(); ++i) {
            std::vector<Cell> row{p, fs[i], annealed_I2(p, fs[i])};
            if (o.t) {
                row.emplace_back(annealed_I2(p, fs[i], *o.t));
            }
            row.push_back(pcs[i]);
            table.add(std::move(row));
        }
    }
    return table;
}

// ---- joint -----------------------------------------------------------------

struct JointOptions {
    std::string p_grid;
    double f = 0, g = 0;
    long t = 100000;
};

Table cmd_joint(const JointOptions& o) {
    const auto ps = parse_grid(o.p_grid);
    if (o.t < 0) {
        throw std::invalid_argument("t must be non-negative");
    }
    Table table;
    table.columns = {"p", "f", "g", "t"};
    for (Label s : kAllLabels) {
        for (Label u : kAllLabels) {
            table.columns.push_back(std::string("Pi_") + to_char(s) + to_char(u));
        }
    }
    for (const char* c : {"diagonal_zxy", "diagonal_n", "diagonal_a", "cross_n_a", "off_pattern_mass", "consistent",
                          "violations"}) {
        table.columns.emplace_back(c);
    }
    for (double p : ps) {
        const JointParams params{p, o.f, o.g};
        params.validate();
        const JointDist pi = iterate_joint(params, o.t);
        std::vector<Cell> row{p, o.f, o.g, static_cast<int64_t>(o.t)};
        for (double v : pi.m) {
            row.emplace_back(v);
        }
        const JointSupportReport rep = classify_joint_support(pi, o.f, o.g);
        std::string violations;
        for (const auto& [s, u] : rep.violations) {
            violations += (violations.empty() ? "" : ";") + std::string{to_char(s), to_char(u)};
        }
        row.insert(row.end(), {rep.diagonal_zxy, rep.diagonal_n, rep.diagonal_a, rep.cross_n_a, rep.off_pattern_mass,
                               rep.consistent(), violations});
        table.add(std::move(row));
    }
    return table;
}

// ---- mc --------------------------------------------------------------------

struct McOptions {
    std::string p_grid = "0", f_grid, r_grid = "0";
    int t = 0;
    long samples = 0;
    std::string variant = "standard";
    bool z_only = false;
    bool check = false;
    double z_threshold = 3;
};

// Realizations checked for per-realization invariants in --check mode.
constexpr long kInvariantRealizations = 1000;

Table cmd_mc(const McOptions& o, const CommonOptions& common, bool& all_pass) {
    const auto ps = parse_grid(o.p_grid);
    const auto fs = parse_grid(o.f_grid);
    const auto rs = parse_grid(o.r_grid);
    if (o.samples < 1) {
        throw std::invalid_argument("samples must be at least 1");
    }
    const bool eavesdrop = o.variant == "eavesdrop";
    Table table;
    table.columns = {"variant", "p",         "r",        "f",       "t",    "samples", "quantity",
                     "estimate", "std_error", "reference", "z_score", "pass"};
    all_pass = true;
    auto add = [&](const TreeSpec& s, const std::string& quantity, double estimate, Cell se, double reference,
                   Cell z, bool pass) {
        all_pass = all_pass && pass;
        table.add({to_string(s.variant), s.p, s.r, s.f, static_cast<int64_t>(s.t), static_cast<int64_t>(o.samples),
                   quantity, estimate, se, reference, z, pass});
    };
    for (double p : eavesdrop ? std::vector<double>{1.0} : ps) {
        for (double r : eavesdrop ? rs : std::vector<double>{0.0}) {
            for (double f : fs) {
                TreeSpec spec;
                spec.t = o.t;
                spec.p = p;
                spec.r = r;
                spec.f = f;
                spec.z_only = o.z_only;
                spec.variant = eavesdrop ? TreeVariant::Eavesdrop : TreeVariant::Standard;
                spec.validate();

                const McEstimate est = mc_estimate_pi(spec, o.samples, common.seed, common.threads);
                const Dist5 ref = eavesdrop ? iterate_eavesdrop({r, f}, o.t).back()
                                            : iterate(initial_condition(f, o.z_only), p, o.t).back();
                for (Label s : kAllLabels) {
                    const double z = z_score(est.pi[s], ref[s], o.samples);
                    add(spec, std::string("pi_") + to_char(s), est.pi[s], est.std_error[index(s)], ref[s], z,
                        !o.check || z <= o.z_threshold);
                }
                if (!o.check || eavesdrop) {
                    continue;
                }
                // Per-realization invariants on the leading realizations.
                const long n_inv = std::min(o.samples, kInvariantRealizations);
                std::vector<uint8_t> failed(static_cast<size_t>(n_inv));
                TreeSpec full = spec;
                full.z_only = false;
                parallel_for(failed.size(), common.threads, [&](size_t i) {
                    const TreeRealization real = sample_realization(full, common.seed, i);
                    failed[i] = !check_realization(build_state(real), real).ok();
                });
                const auto failures = static_cast<double>(std::count(failed.begin(), failed.end(), uint8_t{1}));
                add(spec, "realization_invariant_failures", failures, Cell(), 0.0, Cell(), failures == 0);

                // Annealed purity ratio against the two-replica weights.
                const PurityEstimate pur = mc_purities(full, o.samples, common.seed, common.threads);
                const AnnealedPurities ann = annealed_purities(iterate_weights_raw(p, f, o.t));
                const double ratio_ref = ann.rf / ann.f;
                const double diff = std::abs(pur.ratio - ratio_ref);
                const double z = pur.ratio_std_error > 0 ? diff / pur.ratio_std_error
                                                         : (diff == 0 ? 0.0 : std::numeric_limits<double>::infinity());
                add(spec, "purity_ratio", pur.ratio, pur.ratio_std_error, ratio_ref, z, z <= o.z_threshold);

                // Marginals of the joint recursion against the single-copy iterate.
                if (f > 0 && f < 1) {
                    const double g = 0.5 * (1 + f);
                    const auto joint = joint_trajectory({p, f, g}, o.t);
                    double dev = 0;
                    const auto single = iterate(initial_condition(f), p, o.t);
                    for (int k = 0; k <= o.t; ++k) {
                        dev = std::max(dev, joint[k].marginal_first().distance(single[k]));
                    }
                    add(spec, "joint_marginal_deviation", dev, Cell(), 0.0, Cell(), dev < 1e-10);
                }
            }
        }
    }
    return table;
}

void emit(const Table& table, const CommonOptions& common, std::ostream& out) {
    const Format fmt = common.format == "json" ? Format::Json : Format::Csv;
    if (common.output.empty()) {
        write_table(table, fmt, out);
        return;
    }
    std::ofstream file(common.output, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file " + common.output);
    }
    write_table(table, fmt, file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Order-parameter recursions, fixed points and stabilizer Monte-Carlo checks for "
                 "information spreading on random Clifford trees"};
    app.name("qdet");
    app.require_subcommand(1);
    CommonOptions common;

    IterateOptions it;
    auto* iterate_cmd = app.add_subcommand("iterate", "Iterate the order-parameter recursion");
    iterate_cmd->add_option("--p", it.p, "Clifford probability per node")->required()->check(CLI::Range(0.0, 1.0));
    iterate_cmd->add_option("--f", it.f, "Fraction of leaves in F")->required()->check(CLI::Range(0.0, 1.0));
    iterate_cmd->add_option("--t", it.t, "Generations")->required()->check(CLI::NonNegativeNumber);
    iterate_cmd->add_flag("--z-only", it.z_only, "Only Z operators on F are accessible");
    add_common(iterate_cmd, common);

    PhaseOptions ph;
    auto* phase_cmd = app.add_subcommand("phase-diagram", "Classify converged phases over a (p, f) grid");
    phase_cmd->add_option("--p-grid", ph.p_grid, "p values: start:stop:step or a,b,c")->required();
    phase_cmd->add_option("--f-grid", ph.f_grid, "f values")->required();
    phase_cmd->add_option("--t-list", ph.t_list, "Extra finite-depth columns, e.g. 5,10,20");
    phase_cmd->add_option("--max-iterations", ph.max_iterations, "Iteration cap")->capture_default_str();
    phase_cmd->add_option("--tolerance", ph.tolerance, "Convergence tolerance")->capture_default_str();
    add_common(phase_cmd, common);

    std::string fp_grid;
    auto* fp_cmd = app.add_subcommand("fixed-points", "Closed-form fixed points with numerical stability");
    fp_cmd->add_option("--p-grid", fp_grid, "p values")->required();
    add_common(fp_cmd, common);

    EavesdropOptions ev;
    auto* ev_cmd = app.add_subcommand("eavesdrop", "Fixed points of the eavesdropping recursion");
    ev_cmd->add_option("--r-grid", ev.r_grid, "Eavesdropping rates")->required();
    ev_cmd->add_option("--f-grid,--f", ev.f_grid, "Accessible environment fractions")->required();
    ev_cmd->add_option("--t", ev.t, "Also report pi_n after t generations");
    add_common(ev_cmd, common);

    ReplicaOptions rp;
    auto* rp_cmd = app.add_subcommand("replica", "Annealed two-replica mutual information and thresholds");
    rp_cmd->add_option("--p-grid", rp.p_grid, "p values");
    rp_cmd->add_option("--f-grid", rp.f_grid, "f values")->required();
    rp_cmd->add_option("--t", rp.t, "Also report I2 after t generations");
    rp_cmd->add_flag("--pc", rp.pc_only, "Only the threshold p_c(f)");
    add_common(rp_cmd, common);

    JointOptions jt;
    auto* joint_cmd = app.add_subcommand("joint", "Joint distribution of nested subsystems F within G");
    joint_cmd->add_option("--p-grid,--p", jt.p_grid, "p values")->required();
    joint_cmd->add_option("--f", jt.f, "Fraction in F")->required();
    joint_cmd->add_option("--g", jt.g, "Fraction in G (f < g)")->required();
    joint_cmd->add_option("--t", jt.t, "Maximum generations (stops early on convergence)")->capture_default_str();
    add_common(joint_cmd, common);

    McOptions mc;
    auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo stabilizer estimates against the recursions");
    mc_cmd->add_option("--p-grid,--p", mc.p_grid, "p values (standard variant)");
    mc_cmd->add_option("--f-grid,--f", mc.f_grid, "f values")->required();
    mc_cmd->add_option("--r-grid,--r", mc.r_grid, "Eavesdropping rates (eavesdrop variant)");
    mc_cmd->add_option("--t", mc.t, "Generations")->required()->check(CLI::Range(0, 16));
    mc_cmd->add_option("--samples", mc.samples, "Realizations per point")->required()->check(CLI::PositiveNumber);
    mc_cmd->add_option("--variant", mc.variant, "Tree variant")
        ->check(CLI::IsMember({"standard", "eavesdrop"}))
        ->capture_default_str();
    mc_cmd->add_flag("--z-only", mc.z_only, "Only Z operators on F are accessible");
    mc_cmd->add_flag("--check", mc.check, "Fail with exit code 3 when any consistency check fails");
    mc_cmd->add_option("--z-threshold", mc.z_threshold, "Largest accepted z-score")->capture_default_str();
    add_common(mc_cmd, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "qdet: " << e.what() << "\n";
        return kExitInvalidConfig;
    }

    try {
        if (*iterate_cmd) {
            emit(cmd_iterate(it), common, out);
        } else if (*phase_cmd) {
            emit(cmd_phase_diagram(ph, common), common, out);
        } else if (*fp_cmd) {
            emit(cmd_fixed_points(fp_grid), common, out);
        } else if (*ev_cmd) {
            emit(cmd_eavesdrop(ev), common, out);
        } else if (*rp_cmd) {
            emit(cmd_replica(rp, common), common, out);
        } else if (*joint_cmd) {
            emit(cmd_joint(jt), common, out);
        } else if (*mc_cmd) {
            bool pass = true;
            emit(cmd_mc(mc, common, pass), common, out);
            if (!pass) {
                err << "qdet: consistency check failed\n";
                return kExitCheckFailed;
            }
        }
    } catch (const std::invalid_argument& e) {
        err << "qdet: " << e.what() << "\n";
        return kExitInvalidConfig;
    }
    return kExitOk;
}

}  // namespace qdet::cli
