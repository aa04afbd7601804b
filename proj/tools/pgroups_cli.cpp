// Command-line driver: construct free p-central groups, inspect subgroup
// series, multipliers, and exponent semigroups, and run the verification
// suite over a corpus of small groups.
//
// Exit codes: 0 success, 1 a verification check failed, 2 bad flags or input,
// 3 a resource cap was exceeded (the message names the required order).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "pgroups/verify.hpp"

namespace {

using namespace pgroups;

constexpr long long kDefaultCap = 65536;

struct LoadedInput {
  std::shared_ptr<const CayleyGroup> group;
  SchemePtr scheme;  // non-null when the input file was a scheme descriptor
};

LoadedInput load_input(const std::string& path, long long cap) {
  std::istringstream in(slurp_file(path));
  LoadedInput li;
  if (sniff_kind(in) == InputKind::group_table) {
    li.group = std::make_shared<const CayleyGroup>(read_group(in));
  } else {
    li.scheme = read_scheme(in);
    li.group = std::make_shared<const CayleyGroup>(fpc_enumerate(li.scheme, cap));
  }
  return li;
}

// Scheme files carry their own prime; tables take it from --p or, failing
// that, from the order when it is a prime power.
long long resolve_p(const LoadedInput& in, long long flag_p) {
  if (in.scheme != nullptr) {
    if (flag_p != 0 && flag_p != in.scheme->p)
      throw std::invalid_argument("--p disagrees with the prime in the scheme file");
    return in.scheme->p;
  }
  if (flag_p != 0) {
    if (!is_prime(flag_p)) throw std::invalid_argument("--p must be a prime");
    return flag_p;
  }
  long long p = detail::prime_of_order(in.group->order());
  if (p == 0)
    throw std::invalid_argument("group order is not a prime power; pass --p explicitly");
  return p;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return file;
}

void print_invariants(std::ostream& os, const AbelianInvariants& inv) {
  os << "invariants:";
  if (inv.factors.empty() && inv.free_rank == 0) {
    os << " trivial";
  } else {
    for (const Int& f : inv.factors) os << " " << f;
    for (long long i = 0; i < inv.free_rank; ++i) os << " 0";
  }
  os << "\n";
}

int cmd_construct(long long p, int r, int n, const std::string& emit, long long cap,
                  const std::string& out) {
  SchemePtr s = construct_free_pcentral(p, r, n);
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  if (emit == "scheme")
    write_scheme(os, *s);
  else
    write_group(os, fpc_enumerate(s, cap));
  return 0;
}

int cmd_info(const std::string& path, long long flag_p) {
  LoadedInput in = load_input(path, kDefaultCap);
  long long p = resolve_p(in, flag_p);
  std::cout << "order " << in.group->order() << "\n"
            << "exponent " << in.group->exponent() << "\n"
            << "p-central: " << (is_p_central(*in.group, p) ? "yes" : "no") << "\n";
  return 0;
}

int cmd_series(const std::string& path, const std::string& kind, long long flag_p) {
  LoadedInput in = load_input(path, kDefaultCap);
  const CayleyGroup& g = *in.group;
  std::cout << "order " << g.order() << "\n";
  if (kind == "gamma") {
    std::vector<Subgroup> chain = lower_central(g);
    for (std::size_t i = 0; i < chain.size(); ++i)
      std::cout << "gamma_" << i + 1 << " " << chain[i].order() << "\n";
  } else if (kind == "lambda") {
    std::vector<Subgroup> chain = lambda_series(g, resolve_p(in, flag_p));
    for (std::size_t i = 0; i < chain.size(); ++i)
      std::cout << "lambda_" << i + 1 << " " << chain[i].order() << "\n";
  } else {
    long long p = resolve_p(in, flag_p);
    long long vmax = detail::p_valuation(g.exponent(), p);
    for (long long i = 0; i <= vmax; ++i)
      std::cout << "omega_" << i << " " << omega(g, p, static_cast<int>(i)).order() << "\n";
  }
  return 0;
}

int cmd_multiplier(const std::string& path, long long p, int r, int n) {
  if (!path.empty()) {
    LoadedInput in = load_input(path, kDefaultCap);
    print_invariants(std::cout, h2_integral(*in.group));
  } else {
    print_invariants(std::cout, multiplier_free_pcentral(p, r, n));
  }
  return 0;
}

int cmd_exprank(const std::string& path, long long flag_p) {
  LoadedInput in = load_input(path, kDefaultCap);
  long long p = resolve_p(in, flag_p);
  ExponentSemigroup es = exponent_semigroup(*in.group, p);
  long long ps = ipow_ll(p, static_cast<int>(es.s));
  std::cout << "order " << in.group->order() << "\n"
            << "exponent " << es.exp_g << "\n"
            << "e " << es.e << "\n"
            << "s " << es.s << "\n"
            << "exprank " << es.exprank << "\n"
            << "E(G) = " << ps << "Z u (" << ps << "Z+1)\n";
  return 0;
}

int cmd_verify(const std::string& corpus, const std::string& checks_csv,
               const std::string& report_path, int jobs) {
  std::vector<CorpusEntry> corpus_entries =
      corpus == "builtin" ? default_corpus() : load_corpus_dir(corpus);
  std::vector<std::string> checks;
  std::stringstream cs(checks_csv);
  for (std::string tok; std::getline(cs, tok, ',');)
    if (!tok.empty()) checks.push_back(tok);
  std::vector<CheckResult> results = run_suite(corpus_entries, checks, jobs);

  if (report_path.empty()) {
    write_report(std::cout, results);
  } else {
    std::ofstream file(report_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open report file: " + report_path);
    write_report(file, results);
  }

  long long pass = 0, skipped = 0, fail = 0;
  for (const CheckResult& r : results) {
    if (r.status == "pass") ++pass;
    if (r.status == "skipped") ++skipped;
    if (r.status == "fail") ++fail;
  }
  std::ostream& summary = report_path.empty() ? std::cerr : std::cout;
  summary << "pass " << pass << " skipped " << skipped << " fail " << fail << "\n";
  return fail > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite p-group toolkit: free p-central groups, subgroup series, "
               "Schur multipliers, exponent semigroups, verification suite"};
  app.require_subcommand(1);

  long long p = 0, cap = kDefaultCap;
  int r = 0, n = 0, jobs = 1;
  std::string emit = "scheme", out, path, kind, corpus = "builtin", checks, report;

  CLI::App* construct = app.add_subcommand("construct", "construct a free p-central group");
  construct->add_option("--p", p, "prime")->required();
  construct->add_option("--r", r, "rank (number of generators)")
      ->required()
      ->check(CLI::Range(2, 64));
  construct->add_option("--n", n, "class parameter")->required()->check(CLI::Range(1, 64));
  construct->add_option("--emit", emit, "output kind: table or scheme")
      ->check(CLI::IsMember({"table", "scheme"}));
  construct->add_option("--cap", cap, "largest order to enumerate")->check(CLI::PositiveNumber);
  construct->add_option("--out", out, "output file (default: standard output)");

  CLI::App* info = app.add_subcommand("info", "order, exponent, and p-centrality of a group");
  info->add_option("path", path, "group table or scheme file")->required();
  info->add_option("--p", p, "prime (defaults to the one determined by the input)");

  CLI::App* series = app.add_subcommand("series", "subgroup series orders of a group");
  series->add_option("path", path, "group table or scheme file")->required();
  series->add_option("--kind", kind, "gamma, lambda, or omega")
      ->required()
      ->check(CLI::IsMember({"gamma", "lambda", "omega"}));
  series->add_option("--p", p, "prime (defaults to the one determined by the input)");

  CLI::App* multiplier =
      app.add_subcommand("multiplier", "Schur multiplier invariant factors");
  multiplier->add_option("path", path, "group table or scheme file");
  multiplier->add_option("--p", p, "prime (closed-form mode)");
  multiplier->add_option("--r", r, "rank (closed-form mode)")->check(CLI::Range(2, 64));
  multiplier->add_option("--n", n, "class parameter (closed-form mode)")->check(CLI::Range(1, 64));

  CLI::App* exprank = app.add_subcommand("exprank", "exponent semigroup and exponential rank");
  exprank->add_option("path", path, "group table or scheme file")->required();
  exprank->add_option("--p", p, "prime (defaults to the one determined by the input)");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--corpus", corpus, "builtin or a directory of .pgt/.fpc files");
  verify->add_option("--checks", checks, "comma-separated check ids (default: all)");
  verify->add_option("--report", report, "report file (default: standard output)");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(p, r, n, emit, cap, out);
    if (info->parsed()) return cmd_info(path, p);
    if (series->parsed()) return cmd_series(path, kind, p);
    if (multiplier->parsed()) {
      bool formula = p != 0 || r != 0 || n != 0;
      if (formula == !path.empty())
        throw std::invalid_argument("pass either a file path or all of --p --r --n");
      if (formula && (p == 0 || r == 0 || n == 0))
        throw std::invalid_argument("closed-form mode needs all of --p --r --n");
      return cmd_multiplier(path, p, r, n);
    }
    if (exprank->parsed()) return cmd_exprank(path, p);
    if (verify->parsed()) return cmd_verify(corpus, checks, report, jobs);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << " (required order " << e.required() << ")\n";
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
