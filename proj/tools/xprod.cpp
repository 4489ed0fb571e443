// xprod check|build|agree|extract|universal|search|transport --in FILE [...]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "xprod/run.hpp"

namespace {

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("XPROD_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    } catch (const std::exception&) {
    }
  }
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided crossed products of finite-dimensional algebras"};
  app.require_subcommand(1, 1);

  std::string in, out;
  xprod::RunOptions opt;
  std::uint64_t seed = 0;
  for (const auto& name : xprod::commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--in", in, "input document")->required();
    sub->add_option("--out", out, "report file (default: stdout)");
    sub->add_option("--dataset", opt.dataset, "dataset name");
    sub->add_option("--condition", opt.condition, "check a single condition label");
    sub->add_option("--seed", seed, "seed for randomized search");
    sub->add_flag("--force", opt.force, "build without checking the conditions");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (app.get_subcommands().front()->count("--seed")) opt.seed = seed;
  opt.threads = thread_count();

  std::ifstream file(in, std::ios::binary);
  if (!file) {
    std::cerr << "xprod: cannot read " << in << "\n";
    return 2;
  }
  std::ostringstream text;
  text << file.rdbuf();

  const auto result = xprod::run_text(command, text.str(), opt);
  if (out.empty()) {
    std::cout << result.report << std::flush;
  } else {
    std::ofstream o(out, std::ios::binary);
    o << result.report;
    if (!o) {
      std::cerr << "xprod: cannot write " << out << "\n";
      return 2;
    }
  }
  return result.exit_code;
}
