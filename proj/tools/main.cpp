#include "toricq/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Good quotients of toric varieties by subtorus actions"};
  toricq::RunOptions opt;
  std::string file;
  std::string output;
  bool as_json = false;

  std::string names;
  for (const auto& n : toricq::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", opt.command, "One of: " + names)->required();
  app.add_option("file", file, "Problem file (JSON)");
  app.add_option("--seed", opt.seed, "Seed for all sampling")->capture_default_str();
  app.add_option("--bound", opt.bound, "Box for invariant characters and Hilbert bases")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-subsets", opt.max_subsets, "Enumeration guard")->capture_default_str();
  app.add_option("--k", opt.k, "A_k parameter for enumerate-maximal")->check(CLI::IsMember({1, 2}))->capture_default_str();
  app.add_option("--selection", opt.selection, "Named selection")->capture_default_str();
  app.add_option("--inner", opt.inner, "Open subset X for eq1-check");
  app.add_option("--samples", opt.samples, "Random samples for sampled checks")->capture_default_str();
  app.add_option("--output", output, "Write PREFIX.txt and PREFIX.json");
  app.add_flag("--json", as_json, "Print the JSON report instead of the text report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!file.empty()) opt.problem_path = file;

  const auto res = toricq::run_command(opt);
  if (res.exit_code == 2) {
    std::cerr << "error: " << res.error << "\n";
    return 2;
  }
  std::cout << (as_json ? res.json : res.text);
  if (!output.empty() && !(write_file(output + ".txt", res.text) && write_file(output + ".json", res.json))) {
    std::cerr << "error: cannot write " << output << ".txt / .json\n";
    return 2;
  }
  return res.exit_code;
}
