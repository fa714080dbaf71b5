// h_n for Dyck over two pairs next to a regular language.
#include <iostream>

#include "entropylab/csv.hpp"
#include "entropylab/nerode.hpp"
#include "entropylab/zoo.hpp"

namespace el = entropylab;

int main() {
  std::cout << "# dyck:ab\n" << el::format_csv(el::entropy_sequence(el::dyck("ab"), 4, el::default_probe_policy()));

  el::Dfa even_a;
  even_a.alphabet = el::Alphabet::from_chars("ab");
  even_a.state_names = {"even", "odd"};
  even_a.delta = {1, 0, 0, 1};
  even_a.finals = {true, false};
  std::cout << "# even number of a\n" << el::format_csv(el::entropy_sequence_dfa(even_a, 6));
}
