// ffg: factorial flagged Grothendieck polynomials from the command line.

#include <iostream>

#include "CLI11.hpp"
#include "ffg/job.hpp"

namespace {

void add_shape_options(CLI::App* cmd, ffg::JobSpec& s) {
  cmd->add_option("--shape", s.shape, "lambda as a comma list, e.g. 3,1");
  cmd->add_option("--flag", s.flag, "flag as a comma list, e.g. 2,4");
  cmd->add_option("--perm", s.perm, "vexillary permutation in one-line notation, e.g. 2,1,3");
}

void add_limit_options(CLI::App* cmd, ffg::JobSpec& s) {
  cmd->add_option("--max-rows", s.max_rows, "largest number of rows");
  cmd->add_option("--max-part", s.max_part, "largest lambda_1");
  cmd->add_option("--max-flag", s.max_flag, "largest f_r");
  cmd->add_option("--max-size", s.max_size, "largest |lambda|");
  cmd->add_option("--time-budget", s.time_budget, "seconds");
}

}  // namespace

int main(int argc, char** argv) {
  ffg::JobSpec s;
  std::string spec_path;

  CLI::App app{"Factorial flagged Grothendieck polynomials"};
  app.require_subcommand(0, 1);
  app.add_option("--spec", spec_path, "read the whole job from a JSON file")->check(CLI::ExistingFile);

  const std::vector<std::string> formats{"text", "json", "latex"};

  auto* tableaux = app.add_subcommand("tableaux", "list the flagged set-valued tableaux");
  add_shape_options(tableaux, s);
  add_limit_options(tableaux, s);
  tableaux->add_option("--format", s.format)->check(CLI::IsMember(formats));

  auto* compute = app.add_subcommand("compute", "compute G_{lambda,f} by one method");
  add_shape_options(compute, s);
  add_limit_options(compute, s);
  compute->add_option("--method", s.method)->check(CLI::IsMember({"tableau", "determinant", "divdiff"}));
  compute->add_option("--format", s.format)->check(CLI::IsMember(formats));
  compute->add_option("--specialize", s.specializations, "beta=0 and/or b=0");
  compute->add_option("--trunc-margin", s.trunc_margin, "extra truncation degree for the determinant");

  auto* compare = app.add_subcommand("compare", "compute by all methods and compare");
  add_shape_options(compare, s);
  add_limit_options(compare, s);
  compare->add_option("--format", s.format)->check(CLI::IsMember({"text", "json"}));
  compare->add_option("--specialize", s.specializations, "beta=0 and/or b=0");
  compare->add_option("--trunc-margin", s.trunc_margin, "extra truncation degree for the determinant");

  auto* perm = app.add_subcommand("perm", "analyze a permutation");
  perm->add_option("--perm", s.perm, "one-line notation, e.g. 2,1,4,3")->required();
  perm->add_option("--format", s.format)->check(CLI::IsMember(formats));
  perm->add_flag("--grothendieck", s.grothendieck, "also print the double Grothendieck polynomial");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", s.suite)
      ->required()
      ->check(CLI::IsMember({"operators", "main", "vexillary", "divdiff", "degenerations"}));
  add_limit_options(verify, s);
  verify->add_option("--n", s.n, "permutation size for the vexillary suite");
  verify->add_option("--seed", s.seed, "seed for random samples");
  verify->add_option("--samples", s.samples, "number of random samples");
  verify->add_option("--trunc-margin", s.trunc_margin, "extra truncation degree for determinants");
  verify->add_option("--format", s.format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ffg::ExitCode::invalid_input);
  }

  if (!spec_path.empty()) {
    if (app.get_subcommands().size() > 0) {
      std::cerr << "error: --spec replaces the subcommand\n";
      return static_cast<int>(ffg::ExitCode::invalid_input);
    }
    try {
      s = ffg::job_from_file(spec_path);
    } catch (const ffg::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return static_cast<int>(ffg::ExitCode::invalid_input);
    }
  } else if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return static_cast<int>(ffg::ExitCode::invalid_input);
  } else {
    s.command = app.get_subcommands().front()->get_name();
  }
  return ffg::run_job(s, std::cout, std::cerr);
}
