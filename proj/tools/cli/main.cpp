#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using braidkh::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Braid-like bracket and tri-graded homology of link diagrams"};
  app.require_subcommand(1);

  auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("-w,--word", cfg.word, "Braid word, e.g. \"B3 1 -2 1\"");
    sub->add_option("-f,--file,input", cfg.file, "PD JSON or braid-word file");
    sub->add_option("--cap", cfg.cap, "Largest crossing count to enumerate")->capture_default_str();
    sub->add_flag("--unsafe-cap", cfg.unsafe_cap, "Allow --cap above 24");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "json | csv | pretty")->capture_default_str();
  };

  auto* bracket = app.add_subcommand("bracket", "Refined bracket, lightened and normalized forms");
  add_input(bracket);

  auto* homology = app.add_subcommand("homology", "Tri-graded homology table and Euler characteristic");
  add_input(homology);
  homology->add_flag("--verify", cfg.verify, "Check d^2 = 0 and the Euler identity first");
  homology->add_flag("--dump-matrices", cfg.dump_matrices, "Emit the differential as sparse triplets");

  auto* verify = app.add_subcommand("verify", "Invariance battery on a random braid-like pair");
  add_input(verify);
  verify->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  verify->add_option("--moves", cfg.moves, "Number of random moves")->capture_default_str();
  verify->add_option("--max-crossings", cfg.max_crossings, "Crossing bound for insertions")->capture_default_str();
  verify->add_option("--negative-control", cfg.negative_control, "Apply one excluded move instead")
      ->check(CLI::IsMember({"RI", "IIb"}));

  auto* sites = app.add_subcommand("sites", "List move sites as a move script");
  add_input(sites);
  sites->add_option("--kind", cfg.kind, "Only this move kind");

  auto* apply = app.add_subcommand("apply", "Apply a move script and print the PD JSON");
  add_input(apply);
  apply->add_option("--script", cfg.script, "Move-script JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : braidkh::cli::exit_code::parse;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return braidkh::cli::run(cfg, std::cout, std::cerr);
}
