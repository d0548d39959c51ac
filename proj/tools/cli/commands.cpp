#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "braidkh/bracket.hpp"
#include "braidkh/complex.hpp"
#include "braidkh/errors.hpp"
#include "braidkh/homology.hpp"
#include "braidkh/moves.hpp"
#include "braidkh/pd_json.hpp"
#include "json.hpp"

namespace braidkh::cli {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool looks_like_json(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

void check_cap_setting(const RunConfig& cfg) {
  if (cfg.cap < 0) throw ParseError("--cap must be non-negative");
  if (cfg.cap > kMaxSafeCap && !cfg.unsafe_cap)
    throw ParseError("--cap above " + std::to_string(kMaxSafeCap) + " needs --unsafe-cap");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "pretty")
    throw ParseError("unknown format '" + cfg.format + "'");
}

BraidWord load_word(const RunConfig& cfg) {
  if (!cfg.word.empty()) return parse_braid_text(cfg.word);
  if (cfg.file.empty()) throw ParseError("no input: give -w WORD or -f FILE");
  const std::string text = read_file(cfg.file);
  if (looks_like_json(text)) throw ParseError("this command needs a braid word, not a PD diagram");
  return parse_braid_text(text);
}

std::string ok(bool b) { return b ? "OK" : "FAIL"; }

// --- checks shared by verify

bool oracle_identity(const Diagram& d, int cap) {
  return specialize_chi_to_delta(lighten(bracket_br(d, cap))) == kauffman_oracle(d, cap);
}

bool skein_identity(const Diagram& d, int cap) {
  const BracketElement whole = bracket_br(d, cap);
  for (int v = 0; v < d.crossing_count(); ++v) {
    const auto [d0, d1] = skein_expand(d, v);
    BracketElement sum = bracket_br(d0, cap).scaled(LaurentPoly::monomial(1));
    sum += bracket_br(d1, cap).scaled(LaurentPoly::monomial(-1));
    if (!(sum == whole)) return false;
  }
  return true;
}

bool leading_term(const Diagram& d, int cap) {
  try {
    seifert_leading_term(d, cap);
    return true;
  } catch (const std::logic_error&) {
    return false;
  }
}

bool winding_types(const Diagram& d, int cap) {
  check_cap(d, cap);
  StateTracer tracer(d);
  StateTracer::Result r;
  const std::uint64_t total = std::uint64_t{1} << d.crossing_count();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    tracer.trace(bits, r, false);
    for (int c = 0; c < r.circles; ++c) {
      const int w = r.winding[c];
      if (w < -1 || w > 1) return false;
      if ((w == 0) != (classify(r.break_points[c]) == CircleType::D)) return false;
    }
  }
  return true;
}

ordered_json witness(const Diagram& a, const Diagram& b) {
  return {{"original", ordered_json::parse(to_pd_json(a))}, {"moved", ordered_json::parse(to_pd_json(b))}};
}

int negative_control(const RunConfig& cfg, const Diagram& d, std::ostream& out) {
  const MoveKind kind = cfg.negative_control == "RI"    ? MoveKind::RI_insert
                        : cfg.negative_control == "IIb" ? MoveKind::IIb_insert
                                                        : throw ParseError("--negative-control takes RI or IIb");
  const auto sites = find_sites(d, kind);
  if (sites.empty()) throw GenerationError("no " + std::string(to_string(kind)) + " site on this diagram");
  const BracketElement before = bracket_br(d, cfg.cap);
  std::mt19937_64 rng(cfg.seed);
  const std::size_t start = std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const MoveSite& s = sites[(start + i) % sites.size()];
    const Diagram moved = apply(d, s);
    if (bracket_br(moved, cfg.cap) == before) continue;
    if (cfg.format == "json") {
      out << ordered_json{{"negative_control", cfg.negative_control},
                          {"difference_found", true},
                          {"site", ordered_json::parse(move_script_json({s}))[0]}}
                 .dump(2)
          << '\n';
    } else {
      out << "negative control " << cfg.negative_control << ": bracket difference found at "
          << move_script_json({s}) << '\n';
    }
    return exit_code::ok;
  }
  out << "negative control " << cfg.negative_control << ": no bracket difference found\n";
  return exit_code::verification;
}

}  // namespace

Diagram load_input(const RunConfig& cfg) {
  if (!cfg.word.empty()) return parse_braid_word(cfg.word);
  if (cfg.file.empty()) throw ParseError("no input: give -w WORD or -f FILE");
  const std::string text = read_file(cfg.file);
  return looks_like_json(text) ? parse_pd(text) : parse_braid_word(text);
}

int cmd_bracket(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Diagram d = load_input(cfg);
  const BracketElement b = bracket_br(d, cfg.cap, cfg.threads);
  const LightenedBracket l = lighten(b);
  const LightenedBracket n = normalize(d, l);
  if (cfg.format == "json") {
    ordered_json j;
    j["bracket"] = ordered_json::parse(bracket_json(b));
    j["lightened"] = ordered_json::parse(lightened_json(l));
    j["normalized"] = ordered_json::parse(lightened_json(n));
    out << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "config,a,coeff\n";
    for (const auto& [config, p] : b.terms())
      for (const auto& [e, c] : p.terms()) out << '"' << config << "\"," << e << ',' << c << '\n';
  } else {
    out << "bracket:    " << b.to_string() << '\n';
    out << "lightened:  " << l.to_string() << '\n';
    out << "normalized: " << n.to_string() << '\n';
  }
  return exit_code::ok;
}

int cmd_homology(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Diagram d = load_input(cfg);
  const ChainComplex complex(d, cfg.cap);
  bool euler_ok = true, d2_ok = true;
  std::map<Tridegree, SparseMatrix> mats;
  if (cfg.verify || cfg.dump_matrices) mats = complex.differential_matrices();
  const HomologyTable table = homology_groups(complex, cfg.threads);
  if (cfg.verify) {
    d2_ok = !check_d_squared(mats).has_value();
    euler_ok = check_euler_identity(d, table, bracket_br(d, cfg.cap, cfg.threads));
  }

  if (cfg.format == "json") {
    ordered_json j = ordered_json::parse(homology_json(table));
    if (cfg.verify) j["verify"] = {{"euler", euler_ok}, {"d2", d2_ok}};
    if (cfg.dump_matrices) j["matrices"] = ordered_json::parse(matrices_json(mats));
    out << j.dump(2) << '\n';
  } else {
    out << (cfg.format == "csv" ? homology_csv(table) : homology_pretty(table));
    if (cfg.format == "pretty") out << "euler characteristic: " << euler_characteristic(table).to_string() << '\n';
    if (cfg.verify) out << "euler: " << ok(euler_ok) << ", d2: " << ok(d2_ok) << '\n';
    if (cfg.dump_matrices) out << matrices_json(mats, 2) << '\n';
  }
  if (!euler_ok || !d2_ok) {
    err << "verification failed\n";
    return exit_code::verification;
  }
  return exit_code::ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.moves < 0) throw ParseError("--moves must be non-negative");
  const BraidWord base = load_word(cfg);
  const auto [d, moved] = random_equivalent_pair(cfg.seed, cfg.moves, base, std::min(cfg.max_crossings, cfg.cap));
  if (!cfg.negative_control.empty()) return negative_control(cfg, moved, out);

  std::vector<std::pair<std::string, bool>> checks;
  checks.emplace_back("bracket equality", bracket_br(d, cfg.cap, cfg.threads) == bracket_br(moved, cfg.cap, cfg.threads));
  checks.emplace_back("homology equality",
                      homology_groups(d, cfg.cap, cfg.threads) == homology_groups(moved, cfg.cap, cfg.threads));
  checks.emplace_back("oracle identity", oracle_identity(d, cfg.cap) && oracle_identity(moved, cfg.cap));
  checks.emplace_back("skein identity", skein_identity(d, cfg.cap) && skein_identity(moved, cfg.cap));
  checks.emplace_back("seifert leading term", leading_term(d, cfg.cap) && leading_term(moved, cfg.cap));
  checks.emplace_back("winding/type", winding_types(d, cfg.cap));
  bool all = true;
  for (const auto& c : checks) all = all && c.second;

  if (cfg.format == "json") {
    ordered_json j;
    j["base"] = to_string(base);
    j["seed"] = cfg.seed;
    j["moves"] = cfg.moves;
    j["crossings"] = {d.crossing_count(), moved.crossing_count()};
    for (const auto& [name, pass] : checks) j["checks"][name] = pass;
    j["passed"] = all;
    if (!all) j["witness"] = witness(d, moved);
    out << j.dump(2) << '\n';
  } else {
    out << "pair: " << d.crossing_count() << " -> " << moved.crossing_count() << " crossings after "
        << cfg.moves << " moves (seed " << cfg.seed << ")\n";
    for (const auto& [name, pass] : checks) out << name << ": " << ok(pass) << '\n';
    if (all) {
      out << "all checks passed\n";
    } else {
      out << "witness: " << witness(d, moved).dump() << '\n';
    }
  }
  if (!all) {
    err << "verification failed\n";
    return exit_code::verification;
  }
  return exit_code::ok;
}

int cmd_sites(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Diagram d = load_input(cfg);
  std::vector<MoveSite> all;
  if (cfg.kind.empty()) {
    for (int k = 0; k <= static_cast<int>(MoveKind::IIb_insert); ++k) {
      auto s = find_sites(d, static_cast<MoveKind>(k));
      all.insert(all.end(), s.begin(), s.end());
    }
  } else {
    all = find_sites(d, parse_move_kind(cfg.kind));
  }
  out << move_script_json(all, 2) << '\n';
  return exit_code::ok;
}

int cmd_apply(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.script.empty()) throw ParseError("apply needs --script FILE");
  Diagram d = load_input(cfg);
  for (const MoveSite& s : parse_move_script(read_file(cfg.script))) d = apply(d, s);
  out << to_pd_json(d, 2) << '\n';
  return exit_code::ok;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_cap_setting(cfg);
    if (cfg.command == "bracket") return cmd_bracket(cfg, out, err);
    if (cfg.command == "homology") return cmd_homology(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "sites") return cmd_sites(cfg, out, err);
    if (cfg.command == "apply") return cmd_apply(cfg, out, err);
    throw ParseError("unknown command '" + cfg.command + "'");
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse;
  } catch (const SiteInvalidError& e) {
    err << "invalid move site: " << e.what() << '\n';
    return exit_code::parse;
  } catch (const SizeCapError& e) {
    err << "size cap: " << e.what() << '\n';
    return exit_code::cap;
  } catch (const GenerationError& e) {
    err << "generation failed: " << e.what() << '\n';
    return exit_code::generation;
  }
}

}  // namespace braidkh::cli
