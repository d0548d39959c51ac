#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "braidkh/diagram.hpp"
#include "braidkh/states.hpp"

namespace braidkh::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int parse = 2;
inline constexpr int cap = 3;
inline constexpr int generation = 4;
inline constexpr int verification = 5;
}  // namespace exit_code

inline constexpr int kMaxSafeCap = 24;

struct RunConfig {
  std::string command;
  std::string word;  // inline braid word, wins over `file`
  std::string file;  // PD JSON or braid text
  int cap = kDefaultCap;
  bool unsafe_cap = false;
  std::uint64_t seed = 0;
  int moves = 0;
  int max_crossings = 10;
  int threads = 1;
  std::string format = "pretty";  // json | csv | pretty
  bool verify = false;
  bool dump_matrices = false;
  std::string negative_control;  // "", "RI" or "IIb"
  std::string kind;              // sites
  std::string script;            // apply: move-script path
};

Diagram load_input(const RunConfig& cfg);

int cmd_bracket(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_homology(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sites(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_apply(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Dispatches on cfg.command and maps library errors to exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace braidkh::cli
