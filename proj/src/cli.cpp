#include "hyperlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlab/analytics.hpp"
#include "hyperlab/constants.hpp"
#include "hyperlab/elliptic.hpp"
#include "hyperlab/quaternion.hpp"

namespace hyperlab::cli {

namespace {

struct GlobalOpts {
  int threads = 1;
  std::string format = "table";
  std::string output;
  i64 x_cap = 100'000'000;
};

void check_cap(i64 x, const GlobalOpts& g) {
  if (x > g.x_cap)
    throw cap_error("x = " + std::to_string(x) + " exceeds the configured cap " +
                    std::to_string(g.x_cap));
}

// Coarse progress on stderr for long sweeps; stdout stays deterministic.
ProgressFn progress_printer(i64 x, std::ostream& err) {
  if (x < 200'000) return {};
  return [&err](i64 done, i64 total) {
    i64 step = total < 10 ? 1 : total / 10;
    if (done % step == 0 || done == total)
      err << "progress: " << done << "/" << total << " blocks\n";
  };
}

void emit(const std::string& text, const GlobalOpts& g, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.output, std::ios::trunc);
  if (!f) throw std::invalid_argument("cannot open output file: " + g.output);
  f << text;
}

void emit_report(const analytics::StatReport& rep, const GlobalOpts& g, std::ostream& out) {
  if (g.format == "json")
    emit(analytics::to_json(rep), g, out);
  else if (g.format == "csv")
    emit(analytics::to_csv(rep), g, out);
  else
    emit(analytics::to_table(rep), g, out);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct EquidistArgs {
  std::string case_name;
  i64 x = 0;
  bool primes_only = false;
  int grid = 8;
  int max_freq = 3;
};

void run_equidist(const EquidistArgs& a, const GlobalOpts& g, std::ostream& out) {
  auto c = analytics::sample_case_from_name(a.case_name);
  auto sample = analytics::build_sample(c, a.x, a.primes_only);
  if (sample.points.empty()) throw std::domain_error("equidist: sample is empty at this x");
  auto table = analytics::weyl_table(sample, a.max_freq, g.threads);
  double disc = analytics::box_discrepancy(sample, a.grid, g.threads);
  int M = a.max_freq;

  if (g.format == "json") {
    nlohmann::ordered_json j;
    j["case"] = analytics::sample_case_name(c);
    j["x"] = a.x;
    j["primes_only"] = a.primes_only;
    j["count"] = (i64)sample.points.size();
    j["grid"] = a.grid;
    j["box_discrepancy"] = disc;
    j["max_freq"] = M;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int m1 = -M; m1 <= M; ++m1)
      for (int m2 = -M; m2 <= M; ++m2) {
        auto w = table[(std::size_t)(m1 + M)][(std::size_t)(m2 + M)];
        nlohmann::ordered_json row;
        row["m1"] = m1;
        row["m2"] = m2;
        row["re"] = w.real();
        row["im"] = w.imag();
        row["abs"] = std::abs(w);
        rows.push_back(row);
      }
    j["weyl"] = rows;
    emit(j.dump(2) + "\n", g, out);
    return;
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "case,x,primes_only,count,grid,box_discrepancy,max_freq\n";
    os << analytics::sample_case_name(c) << "," << a.x << "," << (a.primes_only ? 1 : 0) << ","
       << sample.points.size() << "," << a.grid << "," << fmt_double(disc) << "," << M << "\n";
    os << "m1,m2,re,im,abs\n";
    for (int m1 = -M; m1 <= M; ++m1)
      for (int m2 = -M; m2 <= M; ++m2) {
        auto w = table[(std::size_t)(m1 + M)][(std::size_t)(m2 + M)];
        os << m1 << "," << m2 << "," << fmt_double(w.real()) << "," << fmt_double(w.imag())
           << "," << fmt_double(std::abs(w)) << "\n";
      }
    emit(os.str(), g, out);
    return;
  }
  std::ostringstream os;
  os << "case:             " << analytics::sample_case_name(c) << "\n";
  os << "x:                " << a.x << "\n";
  os << "primes only:      " << (a.primes_only ? "yes" : "no") << "\n";
  os << "points:           " << sample.points.size() << "\n";
  os << "box discrepancy:  " << fmt_double(disc) << " (grid " << a.grid << ")\n";
  os << "|weyl| table (m1 rows " << -M << ".." << M << ", m2 cols):\n";
  for (int m1 = -M; m1 <= M; ++m1) {
    for (int m2 = -M; m2 <= M; ++m2) {
      char buf[16];
      std::snprintf(buf, sizeof buf, " %8.5f",
                    std::abs(table[(std::size_t)(m1 + M)][(std::size_t)(m2 + M)]));
      os << buf;
    }
    os << "\n";
  }
  emit(os.str(), g, out);
}

void run_constants(i64 cutoff, const GlobalOpts& g, std::ostream& out) {
  auto p4 = analytics::euler_product(4, 0, cutoff);
  auto p8 = analytics::euler_product(8, 5, cutoff);
  std::vector<std::pair<std::string, double>> rows = {
      {"log_eps", analytics::log_eps()},
      {"chi4_product", p4.value},
      {"chi4_tail_bound", p4.tail_bound},
      {"chi8_product_omit5", p8.value},
      {"chi8_tail_bound", p8.tail_bound},
      {"elliptic_prime_constant", analytics::elliptic_prime_constant(cutoff)},
      {"hyperbolic_main_constant", analytics::hyperbolic_main_constant(cutoff)},
      {"hyperbolic_titchmarsh_constant", analytics::hyperbolic_titchmarsh_constant(cutoff)},
  };
  if (g.format == "json") {
    nlohmann::ordered_json j;
    j["cutoff"] = cutoff;
    for (const auto& [k, v] : rows) j[k] = v;
    emit(j.dump(2) + "\n", g, out);
    return;
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "name,value\n";
    os << "cutoff," << cutoff << "\n";
    for (const auto& [k, v] : rows) os << k << "," << fmt_double(v) << "\n";
    emit(os.str(), g, out);
    return;
  }
  std::ostringstream os;
  os << "cutoff: " << cutoff << "\n";
  for (const auto& [k, v] : rows) os << k << ": " << fmt_double(v) << "\n";
  emit(os.str(), g, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  GlobalOpts g;
  CLI::App app{"hyperlab: angle statistics of two arithmetic matrix families"};
  app.require_subcommand(1);
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--output", g.output, "write the result to a file instead of stdout");
  app.add_option("--x-cap", g.x_cap, "refuse sweeps beyond this bound")->check(CLI::PositiveNumber);

  i64 x = 0;
  i64 m1 = 0, m2 = 0;
  int shift = 2;
  int residue = 1;
  i64 cutoff = 10'000'000;
  EquidistArgs eq;

  // Let options like --format trail the subcommand; unmatched names bubble up.
  app.fallthrough();

  auto* ell = app.add_subcommand("elliptic", "matrix family over the Gaussian integers");
  ell->require_subcommand(1);
  auto* ell_count = ell->add_subcommand("count", "count matrices with size parameter <= x");
  ell_count->add_option("--x", x, "size bound")->required();
  auto* ell_weyl = ell->add_subcommand("weyl", "prime-indexed angular sums");
  ell_weyl->add_option("--x", x, "size bound")->required();
  ell_weyl->add_option("--m1", m1, "first frequency");
  ell_weyl->add_option("--m2", m2, "second frequency");
  ell_weyl->add_option("--shift", shift, "size parameter = p - shift")
      ->check(CLI::IsMember({0, 2}));

  auto* hyp = app.add_subcommand("hyperbolic", "matrix family over Z[sqrt(2)]");
  hyp->require_subcommand(1);
  auto* hyp_count = hyp->add_subcommand("count", "count cosets with size parameter <= x");
  hyp_count->add_option("--x", x, "size bound")->required();
  auto* hyp_weyl = hyp->add_subcommand("weyl", "prime-indexed angular sums");
  hyp_weyl->add_option("--x", x, "size bound")->required();
  hyp_weyl->add_option("--m1", m1, "first frequency");
  hyp_weyl->add_option("--m2", m2, "second frequency");
  auto* hyp_primes =
      hyp->add_subcommand("primes", "Mangoldt-weighted and prime coset counts");
  hyp_primes->add_option("--x", x, "size bound")->required();

  auto* tit = app.add_subcommand("titchmarsh", "residue-restricted weighted divisor sum");
  tit->add_option("--x", x, "size bound")->required();
  tit->add_option("--residue", residue, "residue class mod 8")->check(CLI::IsMember({1, 7}));

  auto* eqc = app.add_subcommand("equidist", "torus samples, Weyl sums, box discrepancy");
  eqc->add_option("--case", eq.case_name, "sample family")->required();
  eqc->add_option("--x", x, "size bound")->required();
  eqc->add_flag("--primes", eq.primes_only, "restrict the size parameter to primes");
  eqc->add_option("--grid", eq.grid, "discrepancy grid resolution")->check(CLI::Range(1, 256));
  eqc->add_option("--max-freq", eq.max_freq, "largest frequency in the Weyl table")
      ->check(CLI::Range(0, 16));

  auto* con = app.add_subcommand("constants", "main-term constants and Euler products");
  con->add_option("--cutoff", cutoff, "Euler product cutoff")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto progress = progress_printer(x, err);
    if (ell_count->parsed()) {
      check_cap(x, g);
      emit_report(elliptic::count_range(x, g.threads, progress), g, out);
    } else if (ell_weyl->parsed()) {
      check_cap(x, g);
      emit_report(elliptic::prime_weyl_A(m1, m2, shift, x, g.threads, progress), g, out);
    } else if (hyp_count->parsed()) {
      check_cap(x, g);
      emit_report(quaternion::count_range_h(x, g.threads, progress), g, out);
    } else if (hyp_weyl->parsed()) {
      check_cap(x, g);
      emit_report(quaternion::prime_weyl_B(m1, m2, x, g.threads, progress), g, out);
    } else if (hyp_primes->parsed()) {
      check_cap(x, g);
      emit_report(quaternion::psi_h(x, g.threads, progress), g, out);
    } else if (tit->parsed()) {
      check_cap(x, g);
      emit_report(quaternion::titchmarsh_sum(x, residue, g.threads, progress), g, out);
    } else if (eqc->parsed()) {
      check_cap(x, g);
      eq.x = x;
      run_equidist(eq, g, out);
    } else if (con->parsed()) {
      run_constants(cutoff, g, out);
    } else {
      err << "usage error: no subcommand\n";
      return 2;
    }
  } catch (const cap_error& e) {
    err << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const invariant_error& e) {
    err << "internal invariant failure: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace hyperlab::cli
