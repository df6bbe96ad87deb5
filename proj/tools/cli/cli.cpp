#include "cli.hpp"

#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "ramanujan/error.hpp"

namespace ramanujan::cli {
namespace {

void add_algebra_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--q", cfg.q, "Prime power q")->required();
  sub->add_option("--d", cfg.d, "Degree d >= 2")->required();
  sub->add_option("--ell", cfg.ell, "Frobenius exponent, prime to d");
  sub->add_option("--beta", cfg.beta, "auto, a packed integer, or [c0,c1,...] over F_q");
  sub->add_option("--basis", cfg.basis, "normal, power or explicit");
  sub->add_option("--zeta0", cfg.zeta0, "First normal basis element (auto searches)");
  sub->add_option("--basis-element", cfg.basis_elements, "Basis element for --basis explicit (repeat d times)");
  sub->add_option("--modulus", cfg.modulus, "Modulus of F_{q^d}, e.g. x^3+x+1 or [1,1,0,1]");
}

void add_quotient_options(CLI::App* sub, RunConfig& cfg, bool required) {
  auto* e = sub->add_option("--e", cfg.e, "Degree e of the residue field");
  if (required) e->required();
  sub->add_option("--s", cfg.s, "Exponent s of the ideal g^s");
  sub->add_option("--fqe-modulus", cfg.fqe_modulus, "Modulus of F_{q^e}");
  sub->add_option("--target-r", cfg.target_r, "Required index r");
  sub->add_option("--cap", cfg.cap, "Closure size cap");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Explicit Ramanujan complexes: construction and verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ramanujan 0.1.0");

  std::function<int(const RunConfig&, std::ostream&)> action;

  auto* construct = app.add_subcommand("construct", "Generators, relations P and header sets S_k as JSON");
  add_algebra_options(construct, cfg);
  add_quotient_options(construct, cfg, false);
  construct->callback([&] { action = cmd_construct; });

  auto* quotient = app.add_subcommand("quotient", "Select alpha and report the ring L and index r");
  add_algebra_options(quotient, cfg);
  add_quotient_options(quotient, cfg, true);
  quotient->callback([&] { action = cmd_quotient; });

  auto* cayley = app.add_subcommand("cayley", "Closure in PGL_d(L) and its Cayley complex");
  add_algebra_options(cayley, cfg);
  add_quotient_options(cayley, cfg, true);
  cayley->add_option("--format", cfg.format, "json, csv or dot");
  cayley->add_option("--out-dir", cfg.out_dir, "Write complex.json, edges.csv, cells_*.csv, complex.dot");
  cayley->add_option("--max-dim", cfg.max_dim, "Highest cell dimension (default d - 1)");
  cayley->callback([&] { action = cmd_cayley; });

  auto* spectrum = app.add_subcommand("spectrum", "Simultaneous spectrum of the colored adjacency operators");
  add_algebra_options(spectrum, cfg);
  add_quotient_options(spectrum, cfg, true);
  spectrum->add_option("--mode", cfg.mode, "dense or sparse");
  spectrum->add_option("--tol", cfg.tol, "S_d membership tolerance");
  spectrum->add_option("--dense-cap", cfg.dense_cap, "Largest vertex count for the dense path");
  spectrum->callback([&] { action = cmd_spectrum; });

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  add_algebra_options(verify, cfg);
  add_quotient_options(verify, cfg, false);
  verify->add_option("--generators", cfg.generators_file, "construct output to check against recomputed generators");
  verify->callback([&] { action = cmd_verify; });

  auto* example = app.add_subcommand("reproduce-example", "Diff the q=2, d=3 generator table against golden data");
  example->add_option("--format", cfg.format, "json or text");
  example->callback([&] { action = cmd_reproduce_example; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidParams;
  }

  try {
    return action(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(static_cast<int>(e.kind()));
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResourceCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace ramanujan::cli
