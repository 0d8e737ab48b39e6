// Command-line front end: verify, minimal, derive, search, spectrum.
// Exit codes: 0 success/valid/verified, 1 negative result, 2 usage or I/O
// error, 3 inconclusive (node budget exceeded).

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trades/algebra.hpp"
#include "trades/core.hpp"
#include "trades/search.hpp"
#include "trades/ttf.hpp"

namespace {

using namespace trades;

std::string default_ledger() {
  const char* env = std::getenv("TRADE_LEDGER");
  return env ? env : "trade.ledger";
}

int cmd_verify(const std::string& path, int t, bool machine) {
  CandidatePair c;
  try {
    c = read_ttf_file(path);
  } catch (const TtfError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (c.t != t) {
    std::cerr << "error: --t " << t << " does not match file header t=" << c.t << '\n';
    return 2;
  }
  Validation v = validate(c);
  if (!v.ok()) {
    std::cout << "invalid " << v.error << '\n';
    return 1;
  }
  const Trade& tr = *v.trade;
  if (machine) {
    std::cout << "valid " << tr.volume() << ' ' << tr.foundation().size() << ' '
              << (is_steiner(tr) ? 1 : 0) << ' ' << (is_simple(tr) ? 1 : 0) << '\n';
  } else {
    std::cout << "valid volume=" << tr.volume()
              << " foundation=" << tr.foundation().size() << std::boolalpha
              << " steiner=" << is_steiner(tr) << " simple=" << is_simple(tr) << '\n';
  }
  return 0;
}

int cmd_minimal(int t, int k, const std::string& out) {
  if (t < 1 || k <= t) {
    std::cerr << "error: need 1 <= t < k\n";
    return 2;
  }
  Trade m = canonical_form(minimal_trade(t, k));
  try {
    write_ttf_file(out, m);
  } catch (const TtfError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::cout << "wrote " << out << " volume=" << m.volume()
            << " foundation=" << m.foundation().size() << '\n';
  return 0;
}

int cmd_derive(const std::string& path, int t, Label x, const std::string& out) {
  if (t < 2) {
    std::cerr << "error: derive requires t >= 2\n";
    return 2;
  }
  CandidatePair c;
  try {
    c = read_ttf_file(path);
  } catch (const TtfError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (c.t != t) {
    std::cerr << "error: --t " << t << " does not match file header t=" << c.t << '\n';
    return 2;
  }
  Validation v = validate(c);
  if (!v.ok()) {
    std::cout << "invalid " << v.error << '\n';
    return 1;
  }
  try {
    Trade d = derived_trade(*v.trade, x);
    write_ttf_file(out, d);
    std::cout << "wrote " << out << " t=" << d.strength() << " volume=" << d.volume()
              << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const TtfError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

struct SearchFlags {
  int max_foundation = -1;
  std::uint64_t node_budget = 0;
  int workers = 1;
  std::string witness_dir = ".";
  std::string ledger;
  bool machine = false;
};

SearchSpec make_spec(int t, int k, int s, Mode mode, const SearchFlags& f) {
  SearchSpec spec;
  spec.t = t;
  spec.k = k;
  spec.s = s;
  spec.mode = mode;
  if (f.max_foundation > 0) spec.max_foundation = f.max_foundation;
  if (f.node_budget > 0) spec.node_budget = f.node_budget;
  spec.worker_count = f.workers;
  return spec;
}

int run_one_search(const SearchSpec& spec, const SearchFlags& f, bool print) {
  SearchOutcome out = enumerate_trades(spec);
  std::string witness_file = "-";
  for (std::size_t i = 0; i < out.witnesses.size(); ++i) {
    char name[128];
    std::snprintf(name, sizeof name, "witness_t%d_k%d_s%d_%zu.ttf", spec.t, spec.k,
                  spec.s, i);
    write_ttf_file(f.witness_dir + "/" + name, out.witnesses[i]);
    if (i == 0) witness_file = name;
  }
  append_ledger(f.ledger.empty() ? default_ledger() : f.ledger, spec, out,
                witness_file == "-" ? "" : witness_file);
  if (print) {
    if (f.machine) {
      std::cout << spec.t << ' ' << spec.k << ' ' << spec.s << ' '
                << mode_name(spec.mode) << ' ' << status_name(out.status) << ' '
                << out.nodes_visited << ' ' << out.witnesses.size() << '\n';
    } else {
      std::cout << status_name(out.status) << " classes=" << out.witnesses.size()
                << " nodes=" << out.nodes_visited << " max_depth=" << out.max_depth
                << '\n';
    }
  }
  switch (out.status) {
    case SearchStatus::witnesses_found: return 0;
    case SearchStatus::exhausted_empty: return 1;
    case SearchStatus::budget_exceeded: return 3;
  }
  return 2;
}

int cmd_search(int t, int k, int s, const std::string& mode_str, const SearchFlags& f) {
  auto mode = parse_mode(mode_str);
  if (!mode) {
    std::cerr << "error: unknown mode " << mode_str << '\n';
    return 2;
  }
  try {
    SearchSpec spec = make_spec(t, k, s, *mode, f);
    int rc = run_one_search(spec, f, true);
    // searches that find witnesses exit 0; exhausted-empty is the negative
    // certificate, exit 1
    return rc;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_spectrum(int t, const std::string& mode_str, const SearchFlags& f) {
  auto mode = parse_mode(mode_str);
  if (!mode) {
    std::cerr << "error: unknown mode " << mode_str << '\n';
    return 2;
  }
  if (t < 2) {
    std::cerr << "error: spectrum requires t >= 2\n";
    return 2;
  }
  std::vector<int> vols = forbidden_volumes(t);
  bool any_witness = false, any_budget = false;
  if (!f.machine) {
    std::printf("forbidden volumes for t=%d, k=%d, mode=%s\n", t, t + 1,
                mode_str.c_str());
    std::printf("%6s  %-16s %12s %10s\n", "s", "status", "nodes", "classes");
  }
  try {
    for (int s : vols) {
      SearchSpec spec = make_spec(t, t + 1, s, *mode, f);
      SearchOutcome out = enumerate_trades(spec);
      std::string witness_file = "-";
      for (std::size_t i = 0; i < out.witnesses.size(); ++i) {
        char name[128];
        std::snprintf(name, sizeof name, "witness_t%d_k%d_s%d_%zu.ttf", spec.t,
                      spec.k, spec.s, i);
        write_ttf_file(f.witness_dir + "/" + name, out.witnesses[i]);
        if (i == 0) witness_file = name;
      }
      append_ledger(f.ledger.empty() ? default_ledger() : f.ledger, spec, out,
                    witness_file == "-" ? "" : witness_file);
      if (f.machine) {
        std::cout << spec.t << ' ' << spec.k << ' ' << spec.s << ' '
                  << mode_name(spec.mode) << ' ' << status_name(out.status) << ' '
                  << out.nodes_visited << ' ' << out.witnesses.size() << '\n';
      } else {
        std::printf("%6d  %-16s %12llu %10zu\n", s, status_name(out.status).c_str(),
                    static_cast<unsigned long long>(out.nodes_visited),
                    out.witnesses.size());
      }
      any_witness |= out.status == SearchStatus::witnesses_found;
      any_budget |= out.status == SearchStatus::budget_exceeded;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (!f.machine)
    std::printf("verdict: %s\n", any_witness ? "witnesses-found"
                                 : any_budget ? "inconclusive"
                                              : "verified");
  if (any_witness) return 1;
  if (any_budget) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"t-(v,k) trade toolkit: validation, construction, algebra, and "
               "exhaustive volume-gap search"};
  app.require_subcommand(1);

  int t = 0, k = 0, s = 0;
  Label x = 0;
  std::string path, out, mode_str = "steiner";
  SearchFlags flags;
  bool machine = false;

  auto* verify = app.add_subcommand("verify", "validate a trade file");
  verify->add_option("--t", t, "strength (must match the file header)")->required();
  verify->add_option("file", path, "TTF file")->required();
  verify->add_flag("--machine", machine, "machine-readable output");

  auto* minimal = app.add_subcommand("minimal", "write the minimal t-(v,k) trade");
  minimal->add_option("--t", t)->required();
  minimal->add_option("--k", k)->required();
  minimal->add_option("out", out, "output TTF path")->required();

  auto* derive = app.add_subcommand("derive", "write the derived trade D_x T");
  derive->add_option("--t", t)->required();
  derive->add_option("--x", x, "element to derive at")->required();
  derive->add_option("file", path)->required();
  derive->add_option("out", out)->required();

  auto add_search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode_str, "steiner | simple | general");
    cmd->add_option("--max-foundation", flags.max_foundation);
    cmd->add_option("--node-budget", flags.node_budget);
    cmd->add_option("--workers", flags.workers);
    cmd->add_option("--witness-dir", flags.witness_dir);
    cmd->add_option("--ledger", flags.ledger, "default $TRADE_LEDGER or trade.ledger");
    cmd->add_flag("--machine", flags.machine);
  };

  auto* search = app.add_subcommand("search", "exhaustive search at fixed (t,k,s)");
  search->add_option("--t", t)->required();
  search->add_option("--k", k)->required();
  search->add_option("--s", s)->required();
  add_search_flags(search);

  auto* spectrum =
      app.add_subcommand("spectrum", "verify all forbidden volumes for a strength");
  spectrum->add_option("--t", t)->required();
  add_search_flags(spectrum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(path, t, machine);
    if (minimal->parsed()) return cmd_minimal(t, k, out);
    if (derive->parsed()) return cmd_derive(path, t, x, out);
    if (search->parsed()) return cmd_search(t, k, s, mode_str, flags);
    if (spectrum->parsed()) return cmd_spectrum(t, mode_str, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
