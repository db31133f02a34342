#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "gogstar/gogstar.hpp"

namespace gogstar::testing {

inline std::string fixture_path(const std::string& name) { return std::string(GOGSTAR_FIXTURES) + "/" + name; }

inline Document load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  return parse_document(in);
}

inline BassMorphism fixture_map(const std::string& name) { return load_fixture(name).map("f"); }

/// Direction at the initial vertex of the named edge.
inline Direction dir(const GraphOfGroups& g, const std::string& edge, std::size_t coset) {
  const std::size_t e = *g.find_edge(edge);
  return {g.edges[e].initial, e, coset};
}

/// C6 = Z/6 as an explicit table.
inline Group c6() { return Group::cyclic(6); }

/// S3 with 0 = id, 1 = (12), 2 = (13), 3 = (23), 4 = (123), 5 = (132).
inline Group s3() {
  return Group::table(6, {0, 1, 2, 3, 4, 5,  //
                          1, 0, 4, 5, 2, 3,  //
                          2, 5, 0, 4, 3, 1,  //
                          3, 4, 5, 0, 1, 2,  //
                          4, 3, 1, 2, 5, 0,  //
                          5, 2, 3, 1, 0, 4});
}

}  // namespace gogstar::testing
