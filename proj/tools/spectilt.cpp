#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spectilt/spectilt.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spectilt::InputError("cli.io", "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectilt: Bass invariants, transposes and tilting/cotilting class checks over graded polynomial quotients"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;
  bool json = false;
  bool timing = false;
  spectilt::SessionOptions opt;
  int pd_cap = -1;

  auto* run = app.add_subcommand("run", "Evaluate a session file and print its reports");
  run->add_option("file", file, "Session file (.st); '-' reads standard input")->required();
  run->add_flag("--json", json, "Emit JSON instead of text");
  run->add_option("--jobs", opt.jobs, "Worker threads for per-prime and per-suite work")->check(CLI::Range(1, 256));
  run->add_option("--pd-cap", pd_cap, "Resolution length cap (default: number of variables + 2)")->check(CLI::NonNegativeNumber);
  run->add_option("--degree-bound", opt.degree_bound, "Extra degrees for Hilbert-function comparisons")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", opt.seed, "Seed for random suites (SPECTILT_SEED overrides)");
  run->add_option("-o,--output", out_path, "Write reports to a file instead of standard output");
  run->add_flag("--timing", timing, "Print wall time to standard error (never part of the reports)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (pd_cap >= 0) opt.pd_cap = pd_cap;

  auto start = std::chrono::steady_clock::now();
  spectilt::Session session(opt);
  int rc = 0;
  std::string error;
  try {
    std::string text;
    if (file == "-") {
      std::ostringstream s;
      s << std::cin.rdbuf();
      text = s.str();
    } else {
      text = read_file(file);
    }
    session.run(text);
  } catch (const spectilt::Error& e) {
    rc = e.exit_code();
    error = "error [" + e.code() + "]: " + e.what();
  } catch (const std::exception& e) {
    rc = 4;
    error = std::string("error [internal]: ") + e.what();
  }

  // Reports completed before an error are still emitted.
  std::string body = json ? spectilt::emit_json(session.reports()) : spectilt::emit_text(session.reports());
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << body;
    if (!out) {
      std::cerr << "error [cli.io]: cannot write " << out_path << "\n";
      return 2;
    }
  }
  if (!error.empty()) std::cerr << error << "\n";
  if (timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "time: " << ms << " ms\n";
  }
  return rc;
}
