#pragma once

// Command-line front end. `run_cli` is kept separate from main() so the
// tests can drive it with captured streams.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "sgdlp/bench.hpp"
#include "sgdlp/checks.hpp"
#include "sgdlp/sgdlp.hpp"

namespace sgdlp::cli {

  enum ExitCode : int {
    ok                = 0,
    usage             = 1,
    promise_violation = 2,
    internal          = 3,
    no_result         = 4,
  };

  inline constexpr std::uint64_t default_seed = 0xD106;

  namespace detail {

    inline InstanceDocument read_document(std::string const& path) {
      std::string text;
      if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
      } else {
        std::ifstream in(path);
        if (!in) {
          throw ParseError("cannot open '" + path + "'", 0);
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
      }
      return parse_instance(text);
    }

    inline DlpOracle make_oracle(std::string const& name) {
      auto s = parse_strategy(name);
      if (!s) {
        throw InvalidArgument("unknown oracle '" + name + "'");
      }
      return DlpOracle{*s};
    }

    template <typename P>
    constexpr bool is_finite_platform = !LengthMeasured<P>;

    struct AnalyzeArgs {
      std::string   file;
      std::string   method = "brute";
      std::string   oracle = "bsgs";
      std::uint64_t cap    = std::uint64_t{1} << 24;
    };

    inline int analyze(AnalyzeArgs const& a, std::uint64_t seed, std::ostream& out) {
      auto doc = read_document(a.file);
      Rng  rng(seed);
      return std::visit(
          [&](auto const& p) -> int {
            auto const g = p.deserialize(doc.g);
            Exponent   l, n, t;
            if (a.method == "brute") {
              auto cs = brute_force_structure(p, g, a.cap);
              l       = cs.index;
              n       = cs.period;
              t       = cs.threshold;
            } else if (a.method == "oracle") {
              if constexpr (!is_finite_platform<std::decay_t<decltype(p)>>) {
                throw InvalidArgument("--method oracle needs a periodic platform");
              } else {
                n         = find_period_via_oracle(p, g, make_oracle(a.oracle), rng).period;
                t         = find_t(p, g, n);
                auto view = build_view(p, g, n, t);
                l         = find_index(p, view);
              }
            } else {
              throw InvalidArgument("unknown method '" + a.method + "'");
            }
            auto view = build_view(p, g, n, t);
            out << "l=" << l << " n=" << n << " t=" << t
                << " e=" << to_hex(p.serialize(view.e))
                << " r=" << to_hex(p.serialize(view.r)) << " method=" << a.method
                << "\n";
            return ok;
          },
          doc.platform);
    }

    struct SolveArgs {
      std::string file;
      std::string oracle  = "bsgs";
      bool        trace   = false;
      bool        minimal = false;
    };

    inline int solve(SolveArgs const& a, std::uint64_t seed, std::ostream& out) {
      auto doc = read_document(a.file);
      if (!doc.h) {
        throw ParseError("solve needs an 'h <hex>' line", 0);
      }
      Rng rng(seed);
      return std::visit(
          [&](auto const& p) -> int {
            using P = std::decay_t<decltype(p)>;
            if constexpr (!is_finite_platform<P>) {
              throw InvalidArgument("platform '" + p.descriptor()
                                    + "' is not periodic; use solve-infinite");
            } else {
              DlpInstance<P> inst{p.deserialize(doc.g), p.deserialize(*doc.h)};
              SolveOptions   options;
              options.oracle  = make_oracle(a.oracle);
              options.minimal = a.minimal;
              auto sol        = solve_periodic(p, inst, rng, options);
              out << "k=" << sol.k << "\n";
              if (a.trace) {
                out << sol.trace.records();
              }
              return ok;
            }
          },
          doc.platform);
    }

    struct InfiniteArgs {
      std::string   file;
      std::uint64_t P     = 16;
      std::size_t   tries = 8;
    };

    inline int solve_infinite(InfiniteArgs const& a, std::uint64_t seed, std::ostream& out) {
      auto doc = read_document(a.file);
      if (!doc.h) {
        throw ParseError("solve-infinite needs an 'h <hex>' line", 0);
      }
      Rng rng(seed);
      return std::visit(
          [&](auto const& p) -> int {
            using P = std::decay_t<decltype(p)>;
            if constexpr (!LengthMeasured<P>) {
              throw InvalidArgument("platform '" + p.descriptor()
                                    + "' has no length function");
            } else {
              DlpInstance<P> inst{p.deserialize(doc.g), p.deserialize(*doc.h)};
              auto outcome = sgdlp::solve_infinite(
                  p, inst, InfiniteOrderParams{Exponent(a.P), a.tries}, rng);
              if (outcome.k) {
                out << "k=" << *outcome.k << "\n";
                return ok;
              }
              out << "status=failure tries=" << outcome.tries << " candidates=";
              for (std::size_t i = 0; i < outcome.candidates.size(); ++i) {
                out << (i ? "," : "") << outcome.candidates[i];
              }
              out << "\n";
              return no_result;
            }
          },
          doc.platform);
    }

    struct SelftestArgs {
      std::size_t count   = 60;
      bool        corrupt = false;
    };

    //! Runs the invariant suites on a seeded corpus and prints one line per
    //! suite.
    inline int selftest(SelftestArgs const& a, std::uint64_t seed, std::ostream& out) {
      Rng         rng(seed);
      std::size_t total_failed = 0;
      auto        report       = [&](char const* suite, std::size_t checked, std::size_t failed) {
        out << "suite=" << suite << " checked=" << checked << " failed=" << failed << "\n";
        total_failed += failed;
      };

      {
        std::size_t checked = 0, failed = 0;
        for (std::size_t i = 0; i < a.count; ++i) {
          auto fp = checks::random_finite_platform(rng);
          std::visit(
              [&](auto const& p) {
                using P = std::decay_t<decltype(p)>;
                if (a.corrupt) {
                  failed += checks::associativity_failures(
                                checks::Corrupted<P>(p), rng, 20)
                            > 0;
                } else {
                  failed += checks::associativity_failures(p, rng, 20) > 0;
                }
              },
              fp);
          ++checked;
        }
        report("associativity", checked, failed);
      }

      std::size_t l1 = 0, l1f = 0, l2 = 0, l2f = 0, ag = 0, agf = 0;
      for (std::size_t i = 0; i < a.count; ++i) {
        auto fp = checks::random_finite_platform(rng);
        std::visit(
            [&](auto const& p) {
              auto           g = p.random_element(rng);
              CycleStructure cs;
              try {
                cs = brute_force_structure(p, g, std::uint64_t{1} << 12);
              } catch (AperiodicAtCap const&) {
                return;
              }
              ++l1;
              l1f += !checks::cycle_group_violations(p, g, cs, rng).empty();
              ++l2;
              l2f += checks::membership_first_failure(p, g, cs) != 0;
              for (auto s : {Strategy::brute, Strategy::bsgs, Strategy::rho}) {
                ++ag;
                try {
                  auto found = find_period_via_oracle(p, g, DlpOracle{s}, rng);
                  agf += found.period != cs.period
                         || find_t(p, g, found.period) != cs.threshold;
                } catch (Error const&) {
                  ++agf;
                }
              }
            },
            fp);
      }
      report("cycle-group", l1, l1f);
      report("membership", l2, l2f);
      report("oracle-agreement", ag, agf);
      return total_failed == 0 ? ok : internal;
    }

    struct BenchArgs {
      std::string platform = "zmul";
      unsigned    min_bits = 10;
      unsigned    max_bits = 20;
      unsigned    per_size = 1;
      unsigned    jobs     = 1;
      std::string oracle   = "bsgs";
      bool        omit_timing = false;
    };

    inline int bench(BenchArgs const& a, std::uint64_t seed, std::ostream& out) {
      if (a.platform != "zmul") {
        throw InvalidArgument("bench supports --platform zmul only");
      }
      if (a.min_bits < 2 || a.max_bits < a.min_bits || a.max_bits > 40) {
        throw InvalidArgument("bench needs 2 <= min-bits <= max-bits <= 40");
      }
      DlpOracle const oracle = make_oracle(a.oracle);

      struct Job {
        unsigned    bits;
        unsigned    index;
        std::string line;
      };
      std::vector<Job> work;
      for (unsigned bits = a.min_bits; bits <= a.max_bits; ++bits) {
        for (unsigned i = 0; i < a.per_size; ++i) {
          work.push_back(Job{bits, i, {}});
        }
      }
      std::atomic<std::size_t> next{0};
      auto                     worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < work.size();) {
          auto& job = work[j];
          job.line  = bench::zmul_row(job.bits,
                                      bench::row_seed(seed, job.bits, job.index),
                                      oracle,
                                      !a.omit_timing)
                         .csv();
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < std::max(1u, a.jobs); ++t) {
        pool.emplace_back(worker);
      }
      worker();
      for (auto& t : pool) {
        t.join();
      }
      out << bench::csv_header << "\n";
      for (auto const& job : work) {
        out << job.line << "\n";
      }
      return ok;
    }

  }  // namespace detail

  //! Parses `args` (without the program name) and runs one subcommand.
  //! Results go to `out`, diagnostics to `err`; returns the exit code.
  inline int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete logarithms in periodic semigroups", "sgdlp"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed;
    app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();

    detail::AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "report the cycle structure (l, n, t, e, r) of g");
    analyze->add_option("file", aa.file, "instance document ('-' for stdin)")->required();
    analyze->add_option("--method", aa.method, "brute | oracle")
        ->check(CLI::IsMember({"brute", "oracle"}))
        ->capture_default_str();
    analyze->add_option("--oracle", aa.oracle, "brute | bsgs | rho")
        ->check(CLI::IsMember({"brute", "bsgs", "rho"}))
        ->capture_default_str();
    analyze->add_option("--cap", aa.cap, "step cap for the brute-force method")
        ->capture_default_str();

    detail::SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "find k with g^k = h for periodic g");
    solve->add_option("file", sa.file, "instance document ('-' for stdin)")->required();
    solve->add_option("--oracle", sa.oracle, "brute | bsgs | rho")
        ->check(CLI::IsMember({"brute", "bsgs", "rho"}))
        ->capture_default_str();
    solve->add_flag("--trace", sa.trace, "print the solver trace after k");
    solve->add_flag("--minimal", sa.minimal, "reduce k to the smallest exponent");

    detail::InfiniteArgs ia;
    auto* infinite = app.add_subcommand("solve-infinite", "length heuristic for g of infinite order");
    infinite->add_option("file", ia.file, "instance document ('-' for stdin)")->required();
    infinite->add_option("--P", ia.P, "random re-powering ceiling")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    infinite->add_option("--m", ia.tries, "number of tries")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    detail::SelftestArgs ta;
    auto* selftest = app.add_subcommand("selftest", "run the embedded invariant suites");
    selftest->add_option("--count", ta.count, "instances per suite")->capture_default_str();
    selftest->add_flag("--corrupt-multiplication", ta.corrupt)->group("");

    detail::BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "products and oracle calls over a size sweep (CSV)");
    bench->add_option("--platform", ba.platform, "platform family")->capture_default_str();
    bench->add_option("--min-bits", ba.min_bits, "smallest log2 of the period")->capture_default_str();
    bench->add_option("--max-bits", ba.max_bits, "largest log2 of the period")->capture_default_str();
    bench->add_option("--per-size", ba.per_size, "instances per size")->capture_default_str();
    bench->add_option("--jobs", ba.jobs, "worker threads")->capture_default_str();
    bench->add_option("--oracle", ba.oracle, "brute | bsgs | rho")
        ->check(CLI::IsMember({"brute", "bsgs", "rho"}))
        ->capture_default_str();
    bench->add_flag("--omit-timing", ba.omit_timing, "write wall_ns as 0");

    std::vector<char const*> argv{"sgdlp"};
    for (auto const& s : args) {
      argv.push_back(s.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const& e) {
      return app.exit(e, out, err) == 0 ? ok : usage;
    }

    try {
      if (*analyze) {
        return detail::analyze(aa, seed, out);
      } else if (*solve) {
        return detail::solve(sa, seed, out);
      } else if (*infinite) {
        return detail::solve_infinite(ia, seed, out);
      } else if (*selftest) {
        return detail::selftest(ta, seed, out);
      } else {
        return detail::bench(ba, seed, out);
      }
    } catch (ParseError const& e) {
      err << "parse error: " << e.what() << "\n";
      return usage;
    } catch (InvalidArgument const& e) {
      err << "error: " << e.what() << "\n";
      return usage;
    } catch (PromiseViolation const& e) {
      err << "promise violation: " << e.what() << "\n";
      return promise_violation;
    } catch (AperiodicAtCap const& e) {
      err << "aperiodic at cap: " << e.what() << "\n";
      return no_result;
    } catch (Error const& e) {
      err << "internal inconsistency: " << e.what() << "\n";
      return internal;
    }
  }

}  // namespace sgdlp::cli
