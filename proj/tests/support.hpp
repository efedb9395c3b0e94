#pragma once

#include <string>
#include <vector>

#include "malt/algebra.hpp"
#include "malt/term.hpp"

inline malt::FiniteAlgebra catalog(const std::string& name) {
  return malt::load_algebra_file(std::string(MALT_CATALOG_DIR) + "/" + name +
                                 ".json");
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"trivial1", "l2", "b2",
                                                 "c3", "z2mal", "z2z2"};
  return names;
}

inline malt::TermOperation ternary(const malt::FiniteAlgebra& a,
                                   const std::string& text) {
  return malt::term_operation(a, malt::parse_term(text, a.signature()), 3);
}
