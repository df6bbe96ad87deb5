#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ramanujan::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalidParams = 2,
  kSearchFailure = 3,
  kResourceCap = 4,
  kVerificationFailure = 5,
};

struct RunConfig {
  std::uint64_t q = 0;
  unsigned d = 0;
  unsigned e = 0;  // 0: no quotient
  unsigned s = 1;
  unsigned ell = 1;
  std::string beta = "auto";
  std::string basis = "normal";
  std::string zeta0 = "auto";
  std::vector<std::string> basis_elements;
  std::string modulus;      // F_{q^d} over F_q
  std::string fqe_modulus;  // F_{q^e} over F_q
  std::optional<unsigned> target_r;
  std::size_t cap = 2'000'000;
  std::size_t dense_cap = 20000;
  double tol = 1e-6;
  std::string mode = "dense";
  std::string format = "json";
  std::string out_dir;
  unsigned max_dim = 0;  // 0: d - 1
  std::string generators_file;
};

/// Parses argv and runs one subcommand. Artifacts go to `out` (or files under
/// --out-dir); diagnostics go to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_construct(const RunConfig& cfg, std::ostream& out);
int cmd_quotient(const RunConfig& cfg, std::ostream& out);
int cmd_cayley(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_reproduce_example(const RunConfig& cfg, std::ostream& out);

/// Exit code for a library error kind.
int exit_code_for(int error_kind);

}  // namespace ramanujan::cli
