// Lambda_n classes of the DPali stack automaton against the counting bound.
#include <iostream>

#include "entropylab/automaton_io.hpp"
#include "entropylab/pda.hpp"

namespace el = entropylab;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : ENTROPYLAB_DATA_DIR "/dpali.json";
  const auto pda = el::load_automaton_as<el::MultiStackPda>(path);
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto r = el::lambda_index(pda, n, 2 * n + 2);
    std::cout << "n=" << n << " classes=" << r.count << " bound=" << r.bound << " reachable=" << r.reachable << '\n';
  }
  std::cout << (el::pda_run(pda, pda.input.parse("ab#ba")).accepted ? "ab#ba accepted\n" : "ab#ba rejected\n");
}
