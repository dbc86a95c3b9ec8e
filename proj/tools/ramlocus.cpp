// ramlocus CLI: every library operation behind a subcommand, with JSON or CSV
// output and the full resolved configuration echoed into each report.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ramlocus/density.hpp"
#include "ramlocus/io.hpp"
#include "ramlocus/locus.hpp"
#include "ramlocus/tame.hpp"

namespace {

using ramlocus::json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitOverBudget = 3;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ramlocus::BadParam("cannot open output file '" + path + "'");
    out << content;
}

json config_json(const ramlocus::CsvComments& entries) {
    json cfg = json::object();
    for (const auto& [key, value] : entries) cfg[key] = value;
    return cfg;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ramlocus::BadParam("cannot open input file '" + path + "'");
    json j;
    in >> j;
    return j;
}

std::string levels_str(const std::vector<unsigned>& levels) {
    std::ostringstream os;
    for (size_t i = 0; i < levels.size(); ++i) {
        if (i) os << ",";
        os << levels[i];
    }
    return os.str();
}

struct CommandContext {
    std::string output;
    std::string format;  // "json" or "csv"; empty means the command default
};

std::string pick_format(const CommandContext& ctx, const std::string& fallback) {
    if (ctx.format.empty()) return fallback;
    if (ctx.format != "json" && ctx.format != "csv")
        throw ramlocus::BadParam("format must be json or csv");
    return ctx.format;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ramlocus: tame lift criteria, ramification locus counts and density simulation over Z/p^n"};
    app.require_subcommand(1);

    CommandContext ctx;
    app.add_option("--output,-o", ctx.output, "output path (default: stdout)")->capture_default_str();
    std::function<int()> action;

    // threshold --m --p
    {
        auto* cmd = app.add_subcommand("threshold", "semistability threshold N(m, p)");
        auto m = std::make_shared<unsigned>(2);
        auto p = std::make_shared<uint64_t>(3);
        cmd->add_option("--m", *m, "matrix dimension")->required();
        cmd->add_option("--p", *p, "residue characteristic")->required();
        cmd->add_option("--format", ctx.format, "json");
        cmd->callback([&, m, p] {
            action = [&, m, p] {
                const auto threshold = ramlocus::semistability_threshold(*m, *p);
                ramlocus::CsvComments cfg{{"command", "threshold"},
                                          {"m", std::to_string(*m)},
                                          {"p", std::to_string(*p)}};
                json out{{"N", threshold.value}, {"m", threshold.m}, {"p", threshold.p}};
                out["config"] = config_json(cfg);
                pick_format(ctx, "json");
                write_output(ctx.output, dump(out));
                return kExitOk;
            };
        });
    }

    // construct --q --sign --t --p --n
    {
        auto* cmd = app.add_subcommand("construct", "build a GL2 ramified witness pair");
        auto q = std::make_shared<uint64_t>(2);
        auto sign = std::make_shared<std::string>("+1");
        auto t = std::make_shared<std::string>("1");
        auto p = std::make_shared<uint64_t>(3);
        auto n = std::make_shared<unsigned>(1);
        cmd->add_option("--q", *q, "local residue characteristic (prime, != p)")->required();
        cmd->add_option("--sign", *sign, "+1 or -1")->capture_default_str();
        cmd->add_option("--t", *t, "nonzero inertia parameter")->capture_default_str();
        cmd->add_option("--p", *p, "coefficient prime")->required();
        cmd->add_option("--n", *n, "precision")->required();
        cmd->add_option("--format", ctx.format, "json");
        cmd->callback([&, q, sign, t, p, n] {
            action = [&, q, sign, t, p, n] {
                int beta_sign;
                if (*sign == "+1" || *sign == "1")
                    beta_sign = 1;
                else if (*sign == "-1")
                    beta_sign = -1;
                else
                    throw ramlocus::BadParam("--sign must be +1 or -1");
                const ramlocus::Ring& ring = ramlocus::ring_of(*p, *n);
                const ramlocus::Residue tr = ring.residue(ramlocus::Nat(*t));
                const ramlocus::TamePair pair =
                    ramlocus::construct_gl2_ramified_pair(*q, beta_sign, tr, ring);
                ramlocus::CsvComments cfg{{"command", "construct"}, {"q", std::to_string(*q)},
                                          {"sign", *sign},          {"t", *t},
                                          {"p", std::to_string(*p)}, {"n", std::to_string(*n)}};
                json out = ramlocus::tame_pair_to_json(pair);
                out["config"] = config_json(cfg);
                pick_format(ctx, "json");
                write_output(ctx.output, dump(out));
                return kExitOk;
            };
        });
    }

    // check-pair --file
    {
        auto* cmd = app.add_subcommand("check-pair", "verify the tame relation and ramification tests");
        auto file = std::make_shared<std::string>();
        cmd->add_option("--file", *file, "tame pair JSON file")->required();
        cmd->add_option("--format", ctx.format, "json");
        cmd->callback([&, file] {
            action = [&, file] {
                const ramlocus::TamePair pair = ramlocus::tame_pair_from_json(load_json_file(*file));
                const auto threshold =
                    ramlocus::semistability_threshold(pair.dim(), pair.ring().p());
                json out{{"p", ramlocus::nat_to_json(ramlocus::Nat(pair.ring().p()))},
                         {"n", pair.ring().n()},
                         {"q", ramlocus::nat_to_json(ramlocus::Nat(pair.q))},
                         {"relation", ramlocus::verify_relation(pair)},
                         {"charpoly_qtwist", ramlocus::charpoly_qtwist_check(pair)},
                         {"threshold", threshold.value}};
                try {
                    out["detectably_ramified"] = ramlocus::is_detectably_ramified(pair.tau);
                } catch (const ramlocus::PrecisionTooLow&) {
                    out["detectably_ramified"] = nullptr;
                    out["note"] = "precision below semistability threshold";
                }
                out["config"] = config_json({{"command", "check-pair"}, {"file", *file}});
                pick_format(ctx, "json");
                write_output(ctx.output, dump(out));
                return kExitOk;
            };
        });
    }

    // criterion --file --q
    {
        auto* cmd = app.add_subcommand("criterion", "ramified-lift criteria for a Frobenius matrix");
        auto file = std::make_shared<std::string>();
        auto q = std::make_shared<uint64_t>(2);
        cmd->add_option("--file", *file, "matrix JSON file")->required();
        cmd->add_option("--q", *q, "prime driving the cyclotomic coordinate")->required();
        cmd->add_option("--format", ctx.format, "json");
        cmd->callback([&, file, q] {
            action = [&, file, q] {
                const ramlocus::Matrix a = ramlocus::matrix_from_json(load_json_file(*file));
                if (!ramlocus::is_prime(*q)) throw ramlocus::BadParam("--q must be prime");
                if (*q == a.ring().p()) throw ramlocus::BadParam("--q must differ from p");
                const ramlocus::Residue b = a.ring().residue(ramlocus::Nat(*q));
                json out{{"m", a.dim()},
                         {"q", ramlocus::nat_to_json(ramlocus::Nat(*q))},
                         {"general", ramlocus::general_ramified_criterion(a, b)},
                         {"resultant",
                          ramlocus::nat_to_json(ramlocus::resultant_invariant(a, b).value())}};
                if (a.dim() == 2) out["gl2"] = ramlocus::gl2_ramified_criterion(a, *q);
                out["config"] = config_json(
                    {{"command", "criterion"}, {"file", *file}, {"q", std::to_string(*q)}});
                pick_format(ctx, "json");
                write_output(ctx.output, dump(out));
                return kExitOk;
            };
        });
    }

    // count-locus --spec --p --n [--b] [--budget] [--workers]
    {
        auto* cmd = app.add_subcommand("count-locus", "exact locus count at one level");
        auto spec_text = std::make_shared<std::string>("detcoupled2");
        auto p = std::make_shared<uint64_t>(3);
        auto n = std::make_shared<unsigned>(1);
        auto b = std::make_shared<std::string>();
        auto budget = std::make_shared<uint64_t>(ramlocus::kDefaultBudget);
        auto workers = std::make_shared<unsigned>(1);
        cmd->add_option("--spec", *spec_text, "subgroup spec")->required();
        cmd->add_option("--p", *p, "prime")->required();
        cmd->add_option("--n", *n, "precision")->required();
        cmd->add_option("--b", *b, "fixed GL1 value (FullGL only)");
        cmd->add_option("--budget", *budget, "enumeration budget")
            ->envname("RAMLOCUS_BUDGET")
            ->capture_default_str();
        cmd->add_option("--workers", *workers, "partition count")->capture_default_str();
        cmd->add_option("--format", ctx.format, "json|csv");
        cmd->callback([&, spec_text, p, n, b, budget, workers] {
            action = [&, spec_text, p, n, b, budget, workers] {
                const auto spec = ramlocus::SubgroupSpec::parse(*spec_text);
                std::optional<ramlocus::Nat> fixed_b;
                if (!b->empty()) fixed_b = ramlocus::Nat(*b);
                const ramlocus::Ring& ring = ramlocus::ring_of(*p, *n);
                const ramlocus::LocusRecord rec =
                    ramlocus::count_locus(spec, ring, fixed_b, *budget, *workers);
                ramlocus::CsvComments cfg{{"command", "count-locus"},
                                          {"spec", spec.str()},
                                          {"p", std::to_string(*p)},
                                          {"n", std::to_string(*n)},
                                          {"budget", std::to_string(*budget)},
                                          {"workers", std::to_string(*workers)}};
                if (fixed_b) cfg.emplace_back("b", fixed_b->str());

                ramlocus::LocusReport report;
                report.p = *p;
                report.m = spec.m;
                report.spec = spec;
                report.dimension = spec.dimension();
                report.fixed_b = fixed_b;
                report.series.push_back(rec);

                const std::string format = pick_format(ctx, "json");
                if (format == "csv") {
                    write_output(ctx.output, ramlocus::locus_report_to_csv(report, cfg));
                } else {
                    json out = ramlocus::locus_record_to_json(rec);
                    out["p"] = ramlocus::nat_to_json(ramlocus::Nat(*p));
                    out["m"] = spec.m;
                    out["spec"] = spec.str();
                    out["dimension"] = spec.dimension();
                    if (fixed_b) out["b"] = ramlocus::nat_to_json(*fixed_b);
                    out["config"] = config_json(cfg);
                    write_output(ctx.output, dump(out));
                }
                return kExitOk;
            };
        });
    }

    // decay --spec --p --n-from --n-to [--b] [--budget] [--workers]
    {
        auto* cmd = app.add_subcommand("decay", "locus series across levels with decay fit");
        auto spec_text = std::make_shared<std::string>("detcoupled2");
        auto p = std::make_shared<uint64_t>(3);
        auto n_from = std::make_shared<unsigned>(1);
        auto n_to = std::make_shared<unsigned>(4);
        auto b = std::make_shared<std::string>();
        auto budget = std::make_shared<uint64_t>(ramlocus::kDefaultBudget);
        auto workers = std::make_shared<unsigned>(1);
        cmd->add_option("--spec", *spec_text, "subgroup spec")->required();
        cmd->add_option("--p", *p, "prime")->required();
        cmd->add_option("--n-from", *n_from, "first level")->required();
        cmd->add_option("--n-to", *n_to, "last level")->required();
        cmd->add_option("--b", *b, "fixed GL1 value (FullGL only)");
        cmd->add_option("--budget", *budget, "enumeration budget")
            ->envname("RAMLOCUS_BUDGET")
            ->capture_default_str();
        cmd->add_option("--workers", *workers, "partition count")->capture_default_str();
        cmd->add_option("--format", ctx.format, "json|csv");
        cmd->callback([&, spec_text, p, n_from, n_to, b, budget, workers] {
            action = [&, spec_text, p, n_from, n_to, b, budget, workers] {
                const auto spec = ramlocus::SubgroupSpec::parse(*spec_text);
                std::optional<ramlocus::Nat> fixed_b;
                if (!b->empty()) fixed_b = ramlocus::Nat(*b);
                const ramlocus::LocusReport report =
                    ramlocus::locus_series(spec, *p, *n_from, *n_to, fixed_b, *budget, *workers);
                ramlocus::CsvComments cfg{{"command", "decay"},
                                          {"spec", spec.str()},
                                          {"p", std::to_string(*p)},
                                          {"n_from", std::to_string(*n_from)},
                                          {"n_to", std::to_string(*n_to)},
                                          {"budget", std::to_string(*budget)},
                                          {"workers", std::to_string(*workers)}};
                if (fixed_b) cfg.emplace_back("b", fixed_b->str());
                const std::string format = pick_format(ctx, "csv");
                if (format == "csv") {
                    write_output(ctx.output, ramlocus::locus_report_to_csv(report, cfg));
                } else {
                    json out = ramlocus::locus_report_to_json(report);
                    out["config"] = config_json(cfg);
                    write_output(ctx.output, dump(out));
                }
                return kExitOk;
            };
        });
    }

    // simulate --spec --p --levels --primes --seed ...
    {
        auto* cmd = app.add_subcommand("simulate", "Chebotarev-style density simulation");
        auto spec_text = std::make_shared<std::string>("detcoupled2");
        auto p = std::make_shared<uint64_t>(3);
        auto levels = std::make_shared<std::vector<unsigned>>();
        auto primes = std::make_shared<std::size_t>(10000);
        auto seed = std::make_shared<uint64_t>(0);
        auto skip = std::make_shared<std::vector<uint64_t>>();
        auto workers = std::make_shared<unsigned>(1);
        auto exact_budget = std::make_shared<uint64_t>(0);
        cmd->add_option("--spec", *spec_text, "subgroup spec")->required();
        cmd->add_option("--p", *p, "prime")->required();
        cmd->add_option("--levels", *levels, "precisions, e.g. 1,2,3,4")
            ->required()
            ->delimiter(',');
        cmd->add_option("--primes", *primes, "number of primes to stream")->capture_default_str();
        cmd->add_option("--seed", *seed, "PRNG seed")->capture_default_str();
        cmd->add_option("--skip", *skip, "extra primes to exclude")->delimiter(',');
        cmd->add_option("--workers", *workers, "worker count")->capture_default_str();
        cmd->add_option("--exact-ref-budget", *exact_budget,
                        "enumeration budget for the exact reference (0 = off)")
            ->capture_default_str();
        cmd->add_option("--format", ctx.format, "json|csv");
        cmd->callback([&, spec_text, p, levels, primes, seed, skip, workers, exact_budget] {
            action = [&, spec_text, p, levels, primes, seed, skip, workers, exact_budget] {
                ramlocus::SimConfig config;
                config.spec = ramlocus::SubgroupSpec::parse(*spec_text);
                config.p = *p;
                config.levels = *levels;
                config.prime_count = *primes;
                config.seed = *seed;
                config.skip = *skip;
                config.workers = *workers;
                config.exact_ref_budget = *exact_budget;
                const ramlocus::DensityTrace trace = ramlocus::simulate_density(config);
                ramlocus::CsvComments cfg{{"command", "simulate"},
                                          {"spec", config.spec.str()},
                                          {"p", std::to_string(*p)},
                                          {"levels", levels_str(*levels)},
                                          {"primes", std::to_string(*primes)},
                                          {"seed", std::to_string(*seed)},
                                          {"workers", std::to_string(*workers)},
                                          {"exact_ref_budget", std::to_string(*exact_budget)}};
                const std::string format = pick_format(ctx, "csv");
                if (format == "csv") {
                    write_output(ctx.output, ramlocus::density_trace_to_csv(trace, cfg));
                } else {
                    json out = ramlocus::density_trace_to_json(config, trace);
                    out["config"] = config_json(cfg);
                    write_output(ctx.output, dump(out));
                }
                return kExitOk;
            };
        });
    }

    // --output lives on the parent app; let subcommands reach it
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        return action ? action() : kExitBadInput;
    } catch (const ramlocus::TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOverBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
