// Decide a small instance read from JSON and print the verdict.
#include <fstream>
#include <iostream>

#include "sepdual/sepdual.hpp"

int main(int argc, char** argv) {
  using namespace sepdual;
  io::json doc;
  if (argc > 1) {
    std::ifstream(argv[1]) >> doc;
  } else {
    // Two nested pairs: a <= b. Forbid the star {a*, b}: the only consistent
    // orientations left point "a" outwards or both inwards.
    doc = io::json::parse(R"({
      "system": {"kind": "abstract", "pairs": [["a", "a*"], ["b", "b*"]], "le": [["a", "b"]]},
      "s_minus": [],
      "family": {"kind": "explicit", "sets": [["a*", "b"], ["a", "b"]]}
    })");
  }
  const auto inst = io::instance_from_json(doc);
  const auto verdict = decide(inst.sys, inst.s_minus, inst.f);
  std::cout << io::verdict_to_json(inst.sys, verdict).dump(2) << "\n";
  return verdict.orientation ? 0 : 10;
}
