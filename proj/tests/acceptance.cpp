// Acceptance criteria A1-A8: one line per criterion, exit 1 if any fails.
#include <cstdio>
#include <cstring>

#include "opf/acceptance.hpp"

int main(int argc, char** argv) {
  opf::acceptance::Options opt;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--corrupt-cofactor") == 0) opt.corruptCofactor = true;
  bool all = true;
  for (const auto& r : opf::acceptance::runAll(opt)) {
    std::printf("%s %s: %s (%.2f s) %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.seconds,
                r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
