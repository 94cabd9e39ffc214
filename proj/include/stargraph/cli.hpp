#pragma once

#include "basis.hpp"
#include "conditions.hpp"
#include "numeric.hpp"
#include "solutions.hpp"
#include "wave.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace stargraph {

using OrderedJson = nlohmann::ordered_json;

/// Everything a single invocation needs; populated from flags and an
/// optional config file, then handed to run().
struct RunConfig {
    std::string command;
    int n = 3;
    std::optional<std::pair<int, int>> n_range;  // certify only; overrides n
    std::string k1 = "3/2";
    std::string k2 = "5/7";
    std::string c = "2";
    std::string format;  // json | tsv | pretty; empty = command default
    std::string kind = "cbas";
    std::string input = "-";  // check only; "-" = standard input
    double h = 1e-4;
    int samples = 50;
};

struct RunResult {
    int exit_code = 0;
    std::string out, err;
};

inline std::pair<int, int> parse_n_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) throw std::invalid_argument("range must look like A..B");
    int lo = 0, hi = 0;
    try {
        lo = std::stoi(text.substr(0, sep));
        hi = std::stoi(text.substr(sep + 2));
    } catch (const std::exception&) {
        throw std::invalid_argument("range must look like A..B");
    }
    if (lo > hi) throw std::invalid_argument("empty range");
    return {lo, hi};
}

/// Applies a JSON config file onto a RunConfig. Keys mirror the command-line
/// flags; unknown keys are rejected so typos surface instead of being
/// silently ignored. Values given on the command line override the file.
inline void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    OrderedJson j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "n") cfg.n = value.get<int>();
        else if (key == "n-range") cfg.n_range = parse_n_range(value.get<std::string>());
        else if (key == "k1") cfg.k1 = value.get<std::string>();
        else if (key == "k2") cfg.k2 = value.get<std::string>();
        else if (key == "c") cfg.c = value.get<std::string>();
        else if (key == "format") cfg.format = value.get<std::string>();
        else if (key == "kind") cfg.kind = value.get<std::string>();
        else if (key == "input") cfg.input = value.get<std::string>();
        else if (key == "h") cfg.h = value.get<double>();
        else if (key == "samples") cfg.samples = value.get<int>();
        else throw std::invalid_argument("config file: unknown key '" + key + "'");
    }
}

namespace cli_detail {

inline SubbasisKind parse_kind(const std::string& s) {
    if (s == "smooth-symmetric") return SubbasisKind::SmoothSymmetric;
    if (s == "smooth-antisymmetric") return SubbasisKind::SmoothAntisymmetric;
    if (s == "nonsmooth-symmetric") return SubbasisKind::NonSmoothSymmetric;
    if (s == "nonsmooth-antisymmetric") return SubbasisKind::NonSmoothAntisymmetric;
    if (s == "cbas") return SubbasisKind::CBas;
    if (s == "dbas") return SubbasisKind::DBas;
    throw std::invalid_argument("unknown subbasis kind '" + s + "'");
}

inline OrderedJson config_json(const RunConfig& cfg) {
    OrderedJson j;
    j["command"] = cfg.command;
    if (cfg.n_range) j["nRange"] = std::to_string(cfg.n_range->first) + ".." + std::to_string(cfg.n_range->second);
    else j["n"] = cfg.n;
    j["k1"] = cfg.k1;
    j["k2"] = cfg.k2;
    j["c"] = cfg.c;
    if (cfg.command == "basis") j["kind"] = cfg.kind;
    if (cfg.command == "check") j["input"] = cfg.input;
    if (cfg.command == "numeric-check") {
        j["h"] = cfg.h;
        j["samples"] = cfg.samples;
    }
    return j;
}

inline OrderedJson trace_json(const std::array<Rat, 4>& t) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& q : t) arr.push_back(rat_string(q));
    return arr;
}

inline OrderedJson members_json(const WaveList& list) {
    OrderedJson arr = OrderedJson::array();
    const auto monomials = all_monomials();
    for (std::size_t i = 0; i < list.size(); ++i) {
        OrderedJson entry;
        entry["index"] = i;
        entry["name"] = list.names[i];
        OrderedJson coeffs = OrderedJson::array();
        for (const auto& [region, values] : list.members[i].regions())
            for (std::size_t s = 0; s < 8; ++s) {
                if (values[s] == 0) continue;
                OrderedJson c;
                c["region"] = region_label(region);
                c["monomial"] = monomial_label(monomials[s]);
                c["value"] = rat_string(values[s]);
                coeffs.push_back(std::move(c));
            }
        entry["coefficients"] = std::move(coeffs);
        arr.push_back(std::move(entry));
    }
    return arr;
}

inline std::string dump(const OrderedJson& j) { return j.dump(2) + "\n"; }

/// One certificate line: a named integer/boolean claim, whether it applies
/// at this n, and whether it held.
struct CheckLine {
    std::string name;
    bool applicable = true;
    bool pass = false;
};

struct Certificate {
    int n = 0;
    OrderedJson detail;
    std::vector<CheckLine> checks;
    bool pass = true;
};

inline Certificate build_certificate(const Params& params) {
    const int n = params.n;
    Certificate cert;
    cert.n = n;

    const auto dims = [&](SubbasisKind k) { return static_cast<int>(subbasis(params, k).size()); };
    const int d_ss = dims(SubbasisKind::SmoothSymmetric);
    const int d_sa = dims(SubbasisKind::SmoothAntisymmetric);
    const int d_ns = dims(SubbasisKind::NonSmoothSymmetric);
    const int d_na = dims(SubbasisKind::NonSmoothAntisymmetric);
    const int d_cb = dims(SubbasisKind::CBas);
    const int d_db = dims(SubbasisKind::DBas);

    const CompletenessReport completeness = certify_completeness(params);
    const DependencyReport deps = verify_dependencies(params);
    const RedundantReport redundant = redundant_bookkeeping(params);
    const ContinuousNonSmoothReport continuous = continuous_nonsmooth_subspace(params);
    const DefectRangeReport defects = defect_range_analysis(params);

    const auto push = [&](std::string name, bool applicable, bool pass) {
        if (applicable && !pass) cert.pass = false;
        cert.checks.push_back({std::move(name), applicable, pass});
    };

    push("subbasis-dimensions", true,
         d_ss == (n - 1) * (n - 1) + 1 && d_sa == 2 * (n - 1) && d_ns == n - 1 && d_na == 2 && d_cb == 2 * n * n &&
             d_db == 2 * n + 2);
    const int expected_off = n >= 3 ? 2 * n * n - 6 * n + 2 : 0;
    const int expected_anti = n >= 3 ? 3 * n - 1 : 4;
    push("family-counts", true,
         completeness.count_off_diagonal == expected_off && completeness.count_antisymmetric == expected_anti &&
             completeness.count_nonsmooth == n - 1);
    push("family-members-satisfy-conditions", true, completeness.members_valid);
    push("generator-independence", true, deps.passed && deps.generator_count == 2 * n * n + 2 * n + 2);
    push("redundant-bookkeeping", n >= 3,
         redundant.rows == 8 * n && redundant.cols == 2 * (n + 1) * (n + 1) &&
             redundant.generator_rank == 2 * n * n + 2 * n + 2 && redundant.nullity == 2 * n * n);
    push("enumeration-nullity", n >= 3, completeness.nullity == 2 * n * n - 2 * n);
    push("span-equality", n >= 3, completeness.span_equal);
    push("continuous-nonsmooth-dim", true, continuous.dim == n + 1 && continuous.expected_span);
    push("defect-range", n >= 3,
         defects.cs46_absent && defects.cs2_dim == n - 1 && defects.family_in_kernel);

    OrderedJson d;
    d["subbasisDims"] = {{"smoothSymmetric", d_ss},    {"smoothAntisymmetric", d_sa}, {"nonSmoothSymmetric", d_ns},
                         {"nonSmoothAntisymmetric", d_na}, {"cbas", d_cb},            {"dbas", d_db}};
    d["familyCounts"] = {{"offDiagonal", completeness.count_off_diagonal},
                         {"antisymmetric", completeness.count_antisymmetric},
                         {"nonSmooth", completeness.count_nonsmooth},
                         {"total", completeness.family_total}};
    d["familyRank"] = completeness.family_rank;
    d["enumeration"] = {{"constraintRows", 8 * n},
                        {"generatorCount", deps.generator_count},
                        {"generatorRank", deps.generator_rank},
                        {"nullity", completeness.nullity}};
    d["redundant"] = {{"rows", redundant.rows},
                      {"cols", redundant.cols},
                      {"generatorRank", redundant.generator_rank},
                      {"constraintRank", redundant.constraint_rank},
                      {"nullity", redundant.nullity}};
    d["continuousNonSmooth"] = {{"dim", continuous.dim}, {"expectedSpan", continuous.expected_span}};
    d["defectRange"] = {{"smoothGenerators", defects.smooth_count},
                        {"kernelDim", defects.kernel_dim},
                        {"psiComboDim", defects.cs2_dim},
                        {"antisymComboDim", defects.cs46_dim},
                        {"antisymCombosAbsent", defects.cs46_absent},
                        {"familyInKernel", defects.family_in_kernel}};
    cert.detail = std::move(d);
    return cert;
}

inline OrderedJson certificate_json(const Certificate& cert, const Params& params) {
    OrderedJson j;
    j["n"] = cert.n;
    j["params"] = {{"k1", rat_string(params.k1)}, {"k2", rat_string(params.k2)}, {"c", rat_string(params.c)}};
    for (auto& [key, value] : cert.detail.items()) j[key] = value;
    OrderedJson checks = OrderedJson::array();
    for (const CheckLine& line : cert.checks)
        checks.push_back({{"name", line.name}, {"applicable", line.applicable}, {"pass", line.pass}});
    j["checks"] = std::move(checks);
    j["pass"] = cert.pass;
    return j;
}

}  // namespace cli_detail

/// Executes one subcommand. Output and error text are returned rather than
/// printed so the engine stays testable; stdin_stream substitutes for
/// standard input when `check` reads from "-".
inline RunResult run(const RunConfig& cfg, std::istream* stdin_stream = nullptr) {
    using namespace cli_detail;
    RunResult result;

    const auto fail_usage = [&](const std::string& msg) {
        result.exit_code = 2;
        result.err = "error: " + msg + "\n";
        return result;
    };

    // certify with an explicit range rebuilds Params per n; every other path
    // needs the base parameters to be valid up front.
    std::optional<Params> params;
    try {
        params.emplace(cfg.n, parse_rational(cfg.k1), parse_rational(cfg.k2), parse_rational(cfg.c));
    } catch (const std::invalid_argument& e) {
        if (!(cfg.command == "certify" && cfg.n_range)) return fail_usage(e.what());
    }

    std::string format = cfg.format;
    const auto default_format = [&](const char* def) {
        if (format.empty()) format = def;
    };
    const auto check_format = [&](std::initializer_list<const char*> allowed) {
        for (const char* a : allowed)
            if (format == a) return true;
        return false;
    };

    try {
        if (cfg.command == "basis") {
            default_format("tsv");
            if (!check_format({"tsv", "json", "pretty"})) return fail_usage("unsupported format '" + format + "'");
            const WaveList list = subbasis(*params, parse_kind(cfg.kind));
            if (format == "tsv") {
                result.out = to_tsv(list.members);
            } else if (format == "json") {
                OrderedJson j;
                j["schemaVersion"] = 1;
                j["config"] = config_json(cfg);
                j["count"] = list.size();
                j["members"] = members_json(list);
                result.out = dump(j);
            } else {
                std::ostringstream os;
                os << cfg.kind << ": " << list.size() << " members\n";
                for (std::size_t i = 0; i < list.size(); ++i) os << "  [" << i << "] " << list.names[i] << "\n";
                result.out = os.str();
            }
        } else if (cfg.command == "families") {
            default_format("json");
            if (!check_format({"tsv", "json", "pretty"})) return fail_usage("unsupported format '" + format + "'");
            const std::vector<Family> fams = all_families(*params);
            if (format == "tsv") {
                std::vector<Wave> all;
                for (const Family& f : fams)
                    all.insert(all.end(), f.list.members.begin(), f.list.members.end());
                result.out = to_tsv(all);
            } else if (format == "json") {
                OrderedJson j;
                j["schemaVersion"] = 1;
                j["config"] = config_json(cfg);
                OrderedJson arr = OrderedJson::array();
                int total = 0;
                for (const Family& f : fams) {
                    OrderedJson fj;
                    fj["label"] = f.label;
                    fj["count"] = f.list.size();
                    fj["members"] = f.list.names;
                    total += static_cast<int>(f.list.size());
                    arr.push_back(std::move(fj));
                }
                j["families"] = std::move(arr);
                j["total"] = total;
                result.out = dump(j);
            } else {
                std::ostringstream os;
                for (const Family& f : fams) {
                    os << f.label << " (" << f.list.size() << "):\n";
                    for (const std::string& name : f.list.names) os << "  " << name << "\n";
                }
                result.out = os.str();
            }
        } else if (cfg.command == "enumerate") {
            default_format("tsv");
            if (!check_format({"tsv", "json", "pretty"})) return fail_usage("unsupported format '" + format + "'");
            const EnumerationResult enumeration = enumerate_solutions(*params);
            if (format == "tsv") {
                result.out = to_tsv(enumeration.members);
            } else if (format == "json") {
                OrderedJson j;
                j["schemaVersion"] = 1;
                j["config"] = config_json(cfg);
                j["nullity"] = enumeration.nullity;
                WaveList list;
                for (std::size_t i = 0; i < enumeration.members.size(); ++i)
                    list.push(enumeration.members[i], "kernel[" + std::to_string(i) + "]");
                j["members"] = members_json(list);
                result.out = dump(j);
            } else {
                std::ostringstream os;
                os << "nullity = " << enumeration.nullity << " (generators: " << enumeration.generators_used.size()
                   << ", constraint rows: " << enumeration.constraints.rows << ")\n";
                result.out = os.str();
            }
        } else if (cfg.command == "certify") {
            default_format("json");
            if (!check_format({"json", "pretty"})) return fail_usage("unsupported format '" + format + "'");
            int lo = cfg.n, hi = cfg.n;
            if (cfg.n_range) {
                lo = cfg.n_range->first;
                hi = cfg.n_range->second;
            }
            bool all_pass = true;
            OrderedJson results = OrderedJson::array();
            std::ostringstream pretty;
            for (int n = lo; n <= hi; ++n) {
                Params p(n, parse_rational(cfg.k1), parse_rational(cfg.k2), parse_rational(cfg.c));
                const Certificate cert = build_certificate(p);
                all_pass = all_pass && cert.pass;
                results.push_back(certificate_json(cert, p));
                pretty << "n=" << n << ": " << (cert.pass ? "PASS" : "FAIL") << "\n";
                for (const CheckLine& line : cert.checks)
                    pretty << "  " << (line.applicable ? (line.pass ? "pass" : "FAIL") : "n/a ") << "  " << line.name
                           << "\n";
            }
            if (format == "json") {
                OrderedJson j;
                j["schemaVersion"] = 1;
                j["config"] = config_json(cfg);
                j["results"] = std::move(results);
                j["pass"] = all_pass;
                result.out = dump(j);
            } else {
                result.out = pretty.str();
            }
            result.exit_code = all_pass ? 0 : 1;
        } else if (cfg.command == "check") {
            default_format("json");
            if (!check_format({"json", "pretty"})) return fail_usage("unsupported format '" + format + "'");
            std::vector<Wave> waves;
            if (cfg.input == "-") {
                if (stdin_stream == nullptr) return fail_usage("no input stream for '-'");
                waves = read_tsv(*stdin_stream, *params);
            } else {
                std::ifstream in(cfg.input);
                if (!in) return fail_usage("cannot open input file: " + cfg.input);
                waves = read_tsv(in, *params);
            }
            bool all_pass = true;
            OrderedJson members = OrderedJson::array();
            std::ostringstream pretty;
            for (std::size_t i = 0; i < waves.size(); ++i) {
                OrderedJson conditions = OrderedJson::array();
                bool member_pass = true;
                const VertexReport vertex = vertex_residuals(waves[i]);
                for (const auto& item : vertex.items) {
                    OrderedJson cj;
                    cj["condition"] = item.condition;
                    cj[item.condition.find("-x") != std::string::npos ? "column" : "row"] = item.fixed_edge;
                    if (item.other_edge != 0) cj["quadrant"] = item.other_edge;
                    cj["coeffs"] = trace_json(item.coeffs);
                    cj["pass"] = item.passed;
                    member_pass = member_pass && item.passed;
                    conditions.push_back(std::move(cj));
                }
                const DbcReport dbc = dbc_residual(waves[i]);
                for (const auto& edge : dbc.edges) {
                    OrderedJson cj;
                    cj["condition"] = "diag-continuity";
                    cj["edge"] = edge.edge;
                    cj["coeffs"] = trace_json(edge.continuity);
                    cj["pass"] = trace_is_zero(edge.continuity);
                    member_pass = member_pass && cj["pass"].get<bool>();
                    conditions.push_back(std::move(cj));
                    OrderedJson rj;
                    rj["condition"] = "dbc";
                    rj["edge"] = edge.edge;
                    rj["coeffs"] = trace_json(edge.residual);
                    rj["pass"] = trace_is_zero(edge.residual);
                    member_pass = member_pass && rj["pass"].get<bool>();
                    conditions.push_back(std::move(rj));
                }
                all_pass = all_pass && member_pass;
                OrderedJson mj;
                mj["member"] = i;
                mj["conditions"] = std::move(conditions);
                mj["pass"] = member_pass;
                members.push_back(std::move(mj));
                pretty << "member " << i << ": " << (member_pass ? "PASS" : "FAIL") << "\n";
            }
            if (format == "json") {
                OrderedJson j;
                j["schemaVersion"] = 1;
                j["config"] = config_json(cfg);
                j["members"] = std::move(members);
                j["pass"] = all_pass;
                result.out = dump(j);
            } else {
                result.out = pretty.str();
            }
            result.exit_code = all_pass ? 0 : 1;
        } else if (cfg.command == "defects") {
            default_format("json");
            if (!check_format({"json", "pretty"})) return fail_usage("unsupported format '" + format + "'");
            const ContinuousNonSmoothReport continuous = continuous_nonsmooth_subspace(*params);
            OrderedJson arr = OrderedJson::array();
            std::ostringstream pretty;
            for (std::size_t i = 0; i < continuous.expected.size(); ++i) {
                const Wave& w = continuous.expected.members[i];
                OrderedJson entry;
                entry["vector"] = continuous.expected.names[i];
                OrderedJson edges = OrderedJson::array();
                pretty << continuous.expected.names[i] << ":\n";
                for (int e = 1; e <= params->n; ++e) {
                    const DiagTrace d = defect(w, e);
                    edges.push_back({{"edge", e}, {"coeffs", trace_json(d)}});
                    pretty << "  edge " << e << ": ";
                    bool first = true;
                    for (int s = 0; s < 4; ++s) {
                        if (d[static_cast<std::size_t>(s)] == 0) continue;
                        if (!first) pretty << " + ";
                        pretty << "(" << rat_string(d[static_cast<std::size_t>(s)]) << ")*" << diag_slot_label(s);
                        first = false;
                    }
                    if (first) pretty << "0";
                    pretty << "\n";
                }
                entry["edges"] = std::move(edges);
                arr.push_back(std::move(entry));
            }
            if (format == "json") {
                OrderedJson j;
                j["schemaVersion"] = 1;
                j["config"] = config_json(cfg);
                j["traceBasis"] = {"cc", "cs", "sc", "ss"};
                j["defects"] = std::move(arr);
                result.out = dump(j);
            } else {
                result.out = pretty.str();
            }
        } else if (cfg.command == "numeric-check") {
            default_format("json");
            if (!check_format({"json", "pretty"})) return fail_usage("unsupported format '" + format + "'");
            bool all_pass = true;
            OrderedJson checks = OrderedJson::array();
            std::ostringstream pretty;
            for (const Family& family : all_families(*params)) {
                for (std::size_t i = 0; i < family.list.size(); ++i) {
                    const Wave& w = family.list.members[i];
                    OrderedJson cj;
                    cj["check"] = "eigen-order";
                    cj["family"] = family.label;
                    cj["member"] = i;
                    const double order = eigen_order(w, kEigenStep);
                    cj["h"] = kEigenStep;
                    cj["order"] = order;
                    const bool order_ok = order >= kOrderLow && order <= kOrderHigh;
                    cj["pass"] = order_ok;
                    all_pass = all_pass && order_ok;
                    checks.push_back(std::move(cj));

                    OrderedJson vj;
                    vj["check"] = "vertex-sampled";
                    vj["family"] = family.label;
                    vj["member"] = i;
                    const SampledResult cont =
                        sampled_condition_check(w, SampledCondition::VertexContinuity, cfg.samples, cfg.h);
                    const SampledResult kirch =
                        sampled_condition_check(w, SampledCondition::Kirchhoff, cfg.samples, cfg.h);
                    const double vrel = std::max(cont.relative(), kirch.relative());
                    vj["relative"] = vrel;
                    vj["pass"] = vrel < kSampledRelTol;
                    all_pass = all_pass && vj["pass"].get<bool>();
                    checks.push_back(std::move(vj));

                    OrderedJson dj;
                    dj["check"] = "dbc-sampled";
                    dj["family"] = family.label;
                    dj["member"] = i;
                    const SampledResult diag =
                        sampled_condition_check(w, SampledCondition::DiagContinuity, cfg.samples, cfg.h);
                    const SampledResult dbc = sampled_condition_check(w, SampledCondition::Dbc, cfg.samples, cfg.h);
                    dj["maxResidual"] = dbc.max_residual;
                    dj["scale"] = dbc.scale;
                    const double drel = std::max(diag.relative(), dbc.relative());
                    dj["relative"] = drel;
                    dj["pass"] = drel < kSampledRelTol;
                    all_pass = all_pass && dj["pass"].get<bool>();
                    checks.push_back(std::move(dj));

                    pretty << family.label << "[" << i << "]: order=" << order << " vertex-rel=" << vrel
                           << " dbc-rel=" << drel << "\n";
                }
            }
            if (format == "json") {
                OrderedJson j;
                j["schemaVersion"] = 1;
                j["config"] = config_json(cfg);
                j["eigenOrderWindow"] = {kOrderLow, kOrderHigh};
                j["sampledRelTol"] = kSampledRelTol;
                j["checks"] = std::move(checks);
                j["pass"] = all_pass;
                result.out = dump(j);
            } else {
                pretty << (all_pass ? "PASS" : "FAIL") << "\n";
                result.out = pretty.str();
            }
            result.exit_code = all_pass ? 0 : 1;
        } else {
            return fail_usage("unknown command '" + cfg.command + "'");
        }
    } catch (const std::invalid_argument& e) {
        return fail_usage(e.what());
    } catch (const std::domain_error& e) {
        return fail_usage(e.what());
    }
    return result;
}

}  // namespace stargraph
