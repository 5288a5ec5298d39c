// Blocks and profiles of a graph given in graph6 (default: the 3x3 grid).
#include <iostream>
#include <string>

#include "sepdual/sepdual.hpp"

int main(int argc, char** argv) {
  using namespace sepdual;
  const SimpleGraph g = io::parse_graph6(argc > 1 ? argv[1] : "HkSg_SD");
  std::cout << "vertices: " << g.size() << ", block number: " << block_number(g) << "\n";
  for (int k = 1; k <= g.size(); ++k) {
    const auto bs = blocks(g, k);
    const auto sk = enumerate_Sk(g, k);
    const bool profile = has_profile(*sk).has_value();
    std::cout << "k=" << k << ": " << bs.size() << " block(s), |S_k| = " << sk->sys.size()
              << ", profile: " << (profile ? "yes" : "no") << "\n";
    for (VertexSet b : bs) std::cout << "  " << g.format(b) << "\n";
    if (bs.empty() && !profile) break;
  }
}
