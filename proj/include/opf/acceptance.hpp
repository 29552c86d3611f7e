#pragma once

#include <string>
#include <vector>

namespace opf::acceptance {

struct Options {
  bool corruptCofactor = false;  // fault injection: A1 must fail
};

struct Result {
  std::string id;     // "A1" ... "A8"
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

Result invariantCurves(const Options& opt = {});
Result darbouxInvariant();
Result finiteFamilyA();
Result finiteFamilyB();
Result infinity();
Result chebyshevExact();
Result chebyshevIntegrals();
Result portraitIntegrity();

/// A1 through A8 in order.
std::vector<Result> runAll(const Options& opt = {});

}  // namespace opf::acceptance
