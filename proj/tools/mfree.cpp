// Command-line surface for the hierarchy-of-freeness toolkit: exact counts,
// limit measures, verification suites, and finite-size convergence tables.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.

#include "mfree/mfree.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct GlobalOptions {
    std::string format = "json";
    int max_enum_n = mfree::kDefaultEnumerationCap;
    size_t max_entries = mfree::kDefaultEntryCap;
    int max_word_len = mfree::kDefaultWordCap;
    bool text() const { return format == "text"; }
};

// The site state used by `converge clt`: zero mean, unit variance, fourth
// moment 3, so that the n = 4 finite-size gap is strictly positive at every
// depth (a two-point state would make the gap vanish identically at m = 1).
mfree::DiscreteMeasure clt_site_state() {
    double r = std::sqrt(3.0);
    return mfree::DiscreteMeasure{{-r, 0.0, r}, {1.0 / 6, 2.0 / 3, 1.0 / 6}};
}

std::string json_double_array(const std::vector<double>& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << mfree::format_double(v[i]);
    os << "]";
    return os.str();
}

// ---- count -----------------------------------------------------------------

int run_count(const GlobalOptions& g, bool pair, int n, int m, std::optional<int> b) {
    if (n < 0 || m < 0) throw std::invalid_argument("count: n and m must be non-negative");
    if (pair) {
        mfree::integer c = mfree::count_nc_pair(n, m);
        if (g.text())
            std::cout << "pair partitions of " << n << " with depth <= " << m << ": " << c << "\n";
        else
            std::cout << "{\"kind\":\"pair\",\"n\":" << n << ",\"m\":" << m << ",\"count\":" << c << "}\n";
        return 0;
    }
    if (b) {
        mfree::integer c = mfree::count_nc(n, *b, m);
        if (g.text())
            std::cout << "non-crossing partitions of " << n << " with " << *b
                      << " blocks, depth <= " << m << ": " << c << "\n";
        else
            std::cout << "{\"kind\":\"blocks\",\"n\":" << n << ",\"m\":" << m << ",\"b\":" << *b
                      << ",\"count\":" << c << "}\n";
        return 0;
    }
    mfree::integer total = 0;
    std::vector<mfree::integer> by_blocks;
    for (int bb = 0; bb <= n; ++bb) {
        by_blocks.push_back(mfree::count_nc(n, bb, m));
        total += by_blocks.back();
    }
    if (g.text()) {
        std::cout << "non-crossing partitions of " << n << " with depth <= " << m << " by block count:\n";
        for (int bb = 0; bb <= n; ++bb)
            std::cout << "  b=" << bb << ": " << by_blocks[static_cast<size_t>(bb)] << "\n";
        std::cout << "  total: " << total << "\n";
    } else {
        std::cout << "{\"kind\":\"blocks\",\"n\":" << n << ",\"m\":" << m << ",\"by_blocks\":[";
        for (int bb = 0; bb <= n; ++bb) std::cout << (bb ? "," : "") << by_blocks[static_cast<size_t>(bb)];
        std::cout << "],\"total\":" << total << "}\n";
    }
    return 0;
}

// ---- measure ---------------------------------------------------------------

int run_measure(const GlobalOptions& g, const std::string& family, int m,
                std::optional<double> lambda, std::optional<int> check_moments) {
    mfree::DiscreteMeasure d;
    if (family == "clt") {
        if (lambda) throw std::invalid_argument("measure: --lambda applies only to the poisson family");
        d = mfree::clt_measure(m);
    } else if (family == "poisson") {
        if (!lambda) throw std::invalid_argument("measure: the poisson family requires --lambda");
        d = mfree::poisson_measure(m, *lambda);
    } else {
        throw std::invalid_argument("measure: unknown family '" + family + "' (use clt or poisson)");
    }

    if (g.text()) {
        std::cout << "family " << family << ", m = " << m;
        if (lambda) std::cout << ", lambda = " << mfree::format_double(*lambda);
        std::cout << "\n  atom                      weight\n";
        for (size_t i = 0; i < d.atoms.size(); ++i)
            std::printf("  %-25s %s\n", mfree::format_double(d.atoms[i]).c_str(),
                        mfree::format_double(d.weights[i]).c_str());
    } else {
        std::cout << mfree::measure_json(family, m, lambda, d) << "\n";
    }

    if (check_moments) {
        int n_max = *check_moments;
        if (n_max < 0) throw std::invalid_argument("measure: --check-moments must be non-negative");
        std::vector<double> measured, combinatorial;
        double max_dev = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            double mm = mfree::moment(d, n);
            double cm;
            if (family == "clt") {
                cm = mfree::to_double(mfree::count_nc_pair(n, m));
            } else {
                cm = n == 0 ? 1.0 : 0.0;
                for (int bb = 1; bb <= n; ++bb)
                    cm += std::pow(*lambda, bb) * mfree::to_double(mfree::count_nc(n, bb, m));
            }
            measured.push_back(mm);
            combinatorial.push_back(cm);
            max_dev = std::max(max_dev, std::abs(mm - cm));
        }
        if (g.text()) {
            std::cout << "  n   measure moment            combinatorial moment\n";
            for (int n = 0; n <= n_max; ++n)
                std::printf("  %-3d %-25s %s\n", n, mfree::format_double(measured[static_cast<size_t>(n)]).c_str(),
                            mfree::format_double(combinatorial[static_cast<size_t>(n)]).c_str());
            std::cout << "  max deviation: " << mfree::format_double(max_dev) << "\n";
        } else {
            std::cout << "{\"moments\":{\"measure\":" << json_double_array(measured)
                      << ",\"combinatorial\":" << json_double_array(combinatorial)
                      << ",\"max_deviation\":" << mfree::format_double(max_dev) << "}}\n";
        }
    }
    return 0;
}

// ---- verify ----------------------------------------------------------------

struct Assertion {
    std::string name;
    bool ok;
    double deviation;
};

void print_assertions(const GlobalOptions& g, const std::string& suite,
                      const std::vector<Assertion>& as, bool all_ok) {
    if (g.text()) {
        for (const auto& a : as)
            std::printf("  %-4s %s (deviation %s)\n", a.ok ? "ok" : "FAIL", a.name.c_str(),
                        mfree::format_double(a.deviation).c_str());
        std::cout << "suite " << suite << ": " << (all_ok ? "pass" : "FAIL") << "\n";
    } else {
        std::cout << "{\"suite\":\"" << suite << "\",\"ok\":" << (all_ok ? "true" : "false")
                  << ",\"assertions\":[";
        for (size_t i = 0; i < as.size(); ++i) {
            std::cout << (i ? "," : "") << "{\"name\":\"" << as[i].name << "\",\"ok\":"
                      << (as[i].ok ? "true" : "false")
                      << ",\"deviation\":" << mfree::format_double(as[i].deviation) << "}";
        }
        std::cout << "]}\n";
    }
}

int run_verify_closed_forms(const GlobalOptions& g, int m_max) {
    auto rep = mfree::verify_closed_forms(m_max, m_max);
    std::vector<Assertion> as;
    for (const auto& e : rep.entries) {
        as.push_back({"clt transform m=" + std::to_string(e.m) + " equals Chebyshev ratio (exact)",
                      e.univariate_ok, 0.0});
        as.push_back({"poisson pair m=" + std::to_string(e.m) + " matches Chebyshev form at sampled lambda",
                      e.bivariate_ok, e.bivariate_deviation});
    }
    print_assertions(g, "closed-forms", as, rep.all_ok);
    return rep.all_ok ? 0 : kExitVerifyFailure;
}

std::string tuple_name(const std::vector<int>& sites) {
    std::string s = "(";
    for (size_t i = 0; i < sites.size(); ++i) s += (i ? "," : "") + std::to_string(sites[i]);
    return s + ")";
}

int run_verify_pyramid(const GlobalOptions& g, int n, int m) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("verify pyramid: n must be a positive even number");
    if (m < 1) throw std::invalid_argument("verify pyramid: m must be positive");
    mfree::GnsData gns = mfree::make_gns(mfree::DiscreteMeasure{{-1.0, 1.0}, {0.5, 0.5}});
    mfree::SiteMatrix a = mfree::centered_x_matrix(gns);
    std::vector<Assertion> as;
    bool all_ok = true;
    size_t one_sided_misses = 0;
    mfree::enumerate_pair_partitions(n, [&](const mfree::SetPartition& p) {
        std::vector<int> sites(static_cast<size_t>(n));
        for (int bi = 0; bi < p.block_count(); ++bi)
            for (int pos : p.blocks[static_cast<size_t>(bi)]) sites[static_cast<size_t>(pos) - 1] = bi + 1;
        mfree::SimConfig cfg(p.block_count(), m, gns, g.max_entries);
        mfree::CorrelationWord word;
        for (int site : sites) word.push_back({site, a});
        auto rep = mfree::pyramid_check(cfg, word, 1e-12, g.max_word_len);
        double dev = std::max(rep.max_out_of_pyramid, std::abs(rep.pyramid_sum - rep.full_correlation));
        as.push_back({"pyramid expansion, sites " + tuple_name(sites), rep.ok, dev});
        all_ok = all_ok && rep.ok;
        one_sided_misses += rep.one_sided_excluded_nonzero;
    });
    as.push_back({"one-sided index variant misses " + std::to_string(one_sided_misses) +
                      " nonzero terms (informational)",
                  true, 0.0});
    print_assertions(g, "pyramid", as, all_ok);
    return all_ok ? 0 : kExitVerifyFailure;
}

int run_verify_fock(const GlobalOptions& g, int len, int m, int d) {
    if (len < 1 || len > g.max_word_len)
        throw mfree::resource_limit_error("verify fock: word length exceeds cap " +
                                          std::to_string(g.max_word_len));
    if (m < 0 || d < 1) throw std::invalid_argument("verify fock: invalid depth or dimension");
    mfree::FockSpace sp(m, d, g.max_entries);
    // Deterministic unit vectors spread over the sphere (golden-angle sweep).
    auto vec_for = [&](int i) {
        mfree::OneParticleVector f(static_cast<size_t>(d), 0.0);
        double theta = 0.61803398874989484 * 3.14159265358979324 * (i + 1);
        if (d == 1) {
            f[0] = 1.0;
        } else {
            f[0] = std::cos(theta);
            f[1] = std::sin(theta);
            for (int t = 2; t < d; ++t) f[static_cast<size_t>(t)] = 0.0;
        }
        return f;
    };
    double max_dev = 0.0;
    size_t words = 0;
    for (int L = 1; L <= len; ++L) {
        for (unsigned mask = 0; mask < (1u << L); ++mask) {
            mfree::OperatorWord w;
            for (int i = 0; i < L; ++i)
                w.push_back({(mask >> i) & 1 ? mfree::OpKind::create : mfree::OpKind::annihilate,
                             vec_for(i)});
            double lhs = mfree::vacuum_expectation(sp, w);
            double rhs = mfree::combinatorial_expectation(m, w);
            max_dev = std::max(max_dev, std::abs(lhs - rhs));
            ++words;
        }
    }
    bool ok = max_dev <= 1e-12;
    std::vector<Assertion> as{{"vacuum expectation matches pairing sum over " + std::to_string(words) +
                                   " words of length <= " + std::to_string(len),
                               ok, max_dev}};
    // Field moments against the exact pair counts.
    mfree::OneParticleVector e1(static_cast<size_t>(d), 0.0);
    e1[0] = 1.0;
    auto fm = mfree::field_moments(sp, e1, 2 * len);
    double fm_dev = 0.0;
    for (int n = 0; n <= 2 * len; ++n)
        fm_dev = std::max(fm_dev, std::abs(fm[static_cast<size_t>(n)] -
                                           mfree::to_double(mfree::count_nc_pair(n, m))));
    bool fm_ok = fm_dev <= 1e-10;
    as.push_back({"field moments match depth-filtered pair counts up to order " + std::to_string(2 * len),
                  fm_ok, fm_dev});
    print_assertions(g, "fock", as, ok && fm_ok);
    return ok && fm_ok ? 0 : kExitVerifyFailure;
}

int run_verify_lemmas(const GlobalOptions& g, int n_max, int m_max) {
    if (n_max < 2 || m_max < 1) throw std::invalid_argument("verify lemmas: need n >= 2 and m >= 1");
    mfree::GnsData gns = mfree::make_gns(mfree::DiscreteMeasure{{-1.0, 1.0}, {0.5, 0.5}});
    mfree::SiteMatrix a = mfree::centered_x_matrix(gns);
    std::vector<Assertion> as;
    bool all_ok = true;
    for (int n = 2; n <= n_max; n += 2) {
        for (int m = 1; m <= m_max; ++m) {
            double worst_vanish = 0.0, worst_product = 0.0;
            mfree::enumerate_pair_partitions(n, [&](const mfree::SetPartition& p) {
                std::vector<int> sites(static_cast<size_t>(n));
                for (int bi = 0; bi < p.block_count(); ++bi)
                    for (int pos : p.blocks[static_cast<size_t>(bi)])
                        sites[static_cast<size_t>(pos) - 1] = bi + 1;
                mfree::SimConfig cfg(p.block_count(), m, gns, g.max_entries);
                mfree::CorrelationWord word;
                for (int site : sites) word.push_back({site, a});
                double c = mfree::correlation(cfg, word, g.max_word_len);
                bool nc = mfree::is_noncrossing(p);
                if (!nc || mfree::depth(p) > m)
                    worst_vanish = std::max(worst_vanish, std::abs(c));
                else
                    worst_product = std::max(worst_product, std::abs(c - 1.0));
            });
            bool v_ok = worst_vanish <= 1e-12, p_ok = worst_product <= 1e-12;
            as.push_back({"crossing or too-deep pair correlations vanish, n=" + std::to_string(n) +
                              " m=" + std::to_string(m),
                          v_ok, worst_vanish});
            as.push_back({"admissible pair correlations factor into pair moments, n=" + std::to_string(n) +
                              " m=" + std::to_string(m),
                          p_ok, worst_product});
            all_ok = all_ok && v_ok && p_ok;
        }
    }
    print_assertions(g, "lemmas", as, all_ok);
    return all_ok ? 0 : kExitVerifyFailure;
}

// ---- converge ----------------------------------------------------------------

int run_converge(const GlobalOptions& g, const std::string& mode, int m, int n,
                 const std::vector<int>& Ns, std::optional<double> lambda) {
    if (Ns.empty()) throw std::invalid_argument("converge: need at least one N");
    double limit;
    if (mode == "clt") {
        if (lambda) throw std::invalid_argument("converge: --lambda applies only to poisson mode");
        limit = mfree::to_double(mfree::count_nc_pair(n, m));
    } else if (mode == "poisson") {
        if (!lambda) throw std::invalid_argument("converge: poisson mode requires --lambda");
        limit = n == 0 ? 1.0 : 0.0;
        for (int bb = 1; bb <= n; ++bb)
            limit += std::pow(*lambda, bb) * mfree::to_double(mfree::count_nc(n, bb, m));
    } else {
        throw std::invalid_argument("converge: unknown mode '" + mode + "' (use clt or poisson)");
    }

    mfree::GnsData gns = mfree::make_gns(clt_site_state());
    std::cout << "N,finite,limit,gap\n";
    for (int N : Ns) {
        if (N < 1) throw std::invalid_argument("converge: N must be positive");
        double finite = mode == "clt"
                            ? mfree::clt_moment_finite(gns, m, N, n, g.max_entries, g.max_word_len)
                            : mfree::poisson_moment_finite(m, N, n, *lambda, g.max_entries, g.max_word_len);
        std::cout << N << "," << mfree::format_double(finite) << "," << mfree::format_double(limit)
                  << "," << mfree::format_double(std::abs(finite - limit)) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Limit laws of the hierarchy of freeness: counts, measures, verification, convergence"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--max-enum-n", g.max_enum_n, "Partition enumeration cap (default 14)");
    app.add_option("--max-entries", g.max_entries, "State-vector entry cap (default 1000000)");
    app.add_option("--max-word-len", g.max_word_len, "Operator word length cap (default 8)");

    // count
    auto* count = app.add_subcommand("count", "Count non-crossing partitions filtered by depth");
    bool pair = false;
    int cn = 0, cm = 0;
    int cb_val = -1;
    count->add_flag("--pair", pair, "Count pair partitions (perfect matchings) only");
    count->add_option("-n,--points", cn, "Number of points")->required();
    count->add_option("-m,--depth", cm, "Depth bound")->required();
    auto* cb_opt = count->add_option("-b,--blocks", cb_val, "Exact number of blocks");

    // measure
    auto* measure = app.add_subcommand("measure", "Emit a limit measure as atoms and weights");
    std::string family;
    int mm = 0;
    double mlam = 0.0;
    int mcheck = -1;
    measure->add_option("family", family, "Measure family: clt or poisson")->required();
    measure->add_option("-m,--depth", mm, "Depth index")->required();
    auto* mlam_opt = measure->add_option("--lambda", mlam, "Rate parameter (poisson family)");
    auto* mcheck_opt = measure->add_option("--check-moments", mcheck,
                                           "Also compare measure moments to combinatorial moments up to this order");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a named verification suite");
    std::string suite;
    int vmmax = 6, vn = 4, vm = 2, vlen = 6, vd = 2;
    verify->add_option("suite", suite, "Suite: closed-forms, pyramid, fock, or lemmas")->required();
    verify->add_option("--m-max", vmmax, "Largest depth for closed-forms (default 6)");
    auto* vn_opt = verify->add_option("-n", vn, "Word length: pyramid default 4, lemmas default up to 6");
    auto* vm_opt = verify->add_option("-m", vm, "Depth: pyramid/fock default 2, lemmas default up to 3");
    verify->add_option("--len", vlen, "Longest word for fock (default 6)");
    verify->add_option("-d", vd, "One-particle dimension for fock (default 2)");

    // converge
    auto* converge = app.add_subcommand("converge", "Finite-size moments against the limit, as CSV");
    std::string mode;
    int gm = 0, gn = 0;
    std::vector<int> gNs;
    double glam = 0.0;
    converge->add_option("mode", mode, "clt or poisson")->required();
    converge->add_option("-m,--depth", gm, "Depth index")->required();
    converge->add_option("-n,--order", gn, "Moment order")->required();
    converge->add_option("-N,--sizes", gNs, "Comma-separated list of sizes N")->required()->delimiter(',');
    auto* glam_opt = converge->add_option("--lambda", glam, "Rate parameter (poisson mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (count->parsed())
            return run_count(g, pair, cn, cm, cb_opt->count() ? std::optional<int>(cb_val) : std::nullopt);
        if (measure->parsed())
            return run_measure(g, family, mm, mlam_opt->count() ? std::optional<double>(mlam) : std::nullopt,
                               mcheck_opt->count() ? std::optional<int>(mcheck) : std::nullopt);
        if (verify->parsed()) {
            if (suite == "closed-forms") return run_verify_closed_forms(g, vmmax);
            if (suite == "pyramid") return run_verify_pyramid(g, vn, vm);
            if (suite == "fock") return run_verify_fock(g, vlen, vm, vd);
            if (suite == "lemmas")
                return run_verify_lemmas(g, vn_opt->count() ? vn : 6, vm_opt->count() ? vm : 3);
            throw std::invalid_argument("verify: unknown suite '" + suite + "'");
        }
        if (converge->parsed())
            return run_converge(g, mode, gm, gn, gNs,
                                glam_opt->count() ? std::optional<double>(glam) : std::nullopt);
    } catch (const mfree::resource_limit_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitResource;
    } catch (const mfree::decomposition_error& e) {
        std::cerr << "decomposition failure: " << e.what() << "\n";
        return kExitVerifyFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
