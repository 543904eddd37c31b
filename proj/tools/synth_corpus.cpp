// Writes the synthetic grounding corpus (32 burst signals + transcripts +
// lexicon + embeddings + pipeline config) so the pipeline can be exercised
// without any private study data.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hapticlang/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generate a synthetic demo corpus with a ready-to-run pipeline config"};
  std::string out_dir = "demo-corpus";
  app.add_option("--out", out_dir, "directory to create");
  CLI11_PARSE(app, argc, argv);

  try {
    auto fixture = hapticlang::synthetic::write_grounding_fixture(out_dir);
    std::cout << "wrote corpus under " << fixture.root.string() << "\n"
              << "run it with:\n"
              << "  pipeline run --config " << fixture.config_path.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
