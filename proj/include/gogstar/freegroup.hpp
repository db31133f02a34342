#ifndef GOGSTAR_FREEGROUP_HPP
#define GOGSTAR_FREEGROUP_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "gogstar/stargraph.hpp"

namespace gogstar {

class EmptyWord : public InputError {
 public:
  using InputError::InputError;
};

/// Letters are +k for the k-th basis element (k >= 1) and -k for its inverse.
using Letters = std::vector<int>;

/// Nonempty and cyclically reduced.
struct CyclicWord {
  std::size_t rank = 0;
  Letters letters;

  std::string text() const {
    std::string out;
    for (int l : letters) {
      const char c = static_cast<char>('a' + (l > 0 ? l : -l) - 1);
      out += l > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
  }
  bool operator==(const CyclicWord&) const = default;
};

/// "abAB", "ab^-1", "a b B a". Uppercase or a ^-1 suffix inverts a letter.
inline Letters parse_letters(std::string_view text) {
  Letters out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) continue;
    if (!std::isalpha(c)) throw InputError("unexpected character '" + std::string(1, text[i]) + "' in word");
    int l = std::tolower(c) - 'a' + 1;
    if (std::isupper(c)) l = -l;
    if (text.substr(i + 1, 3) == "^-1") {
      l = -l;
      i += 3;
    }
    out.push_back(l);
  }
  return out;
}

inline std::size_t inferred_rank(const Letters& w) {
  std::size_t r = 0;
  for (int l : w) r = std::max(r, static_cast<std::size_t>(l > 0 ? l : -l));
  return r;
}

inline Letters free_reduce(const Letters& w) {
  Letters out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline CyclicWord cyclic_reduce(const Letters& raw, std::size_t rank = 0) {
  const std::size_t needed = inferred_rank(raw);
  if (rank == 0) rank = needed;
  if (needed > rank) throw InputError("word uses a letter beyond rank " + std::to_string(rank));
  Letters w = free_reduce(raw);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  if (lo >= hi) throw EmptyWord("word reduces to the empty word");
  return {rank, Letters(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi))};
}

inline CyclicWord cyclic_reduce(std::string_view text, std::size_t rank = 0) {
  return cyclic_reduce(parse_letters(text), rank);
}

inline std::string letter_name(std::size_t k) {
  if (k < 1 || k > 26) throw InputError("rank must be between 1 and 26");
  return std::string(1, static_cast<char>('a' + k - 1));
}

/// One vertex "v" with a trivial-group loop per basis letter.
inline GraphPtr rose(std::size_t rank) {
  if (rank < 1 || rank > 26) throw InputError("rank must be between 1 and 26");
  auto g = std::make_shared<GraphOfGroups>();
  const Group one = Group::trivial();
  g->add_vertex("v", one);
  for (std::size_t k = 1; k <= rank; ++k)
    g->add_edge(letter_name(k), 0, 0, one, Homomorphism::identity(one), Homomorphism::identity(one));
  return g;
}

/// Subdivided cycles, one per word, mapped letter by letter onto the rose.
/// Words need not be reduced; unreduced words give non-immersions.
inline BassMorphism word_graph(const std::vector<Letters>& words, std::size_t rank) {
  GraphPtr target = rose(rank);
  auto g = std::make_shared<GraphOfGroups>();
  const Group one = Group::trivial();
  BassMorphism m{g, target, {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    if (w.empty()) throw EmptyWord("empty word");
    if (inferred_rank(w) > rank) throw InputError("word uses a letter beyond rank " + std::to_string(rank));
    const std::size_t base = g->vertices.size();
    for (std::size_t j = 0; j < w.size(); ++j) {
      g->add_vertex("w" + std::to_string(i) + "." + std::to_string(j), one);
      m.vertex_map.push_back(0);
      m.vertex_homs.push_back(Homomorphism::identity(one));
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
      const std::size_t from = base + j, to = base + (j + 1) % w.size();
      g->add_edge("e" + std::to_string(i) + "." + std::to_string(j), from, to, one, Homomorphism::identity(one),
                  Homomorphism::identity(one));
      const std::size_t letter_edge = 2 * (static_cast<std::size_t>(w[j] > 0 ? w[j] : -w[j]) - 1);
      m.edge_map.push_back(w[j] > 0 ? letter_edge : letter_edge + 1);
      m.edge_map.push_back(w[j] > 0 ? letter_edge + 1 : letter_edge);
      for (int k = 0; k < 2; ++k) {
        m.edge_homs.push_back(Homomorphism::identity(one));
        m.twists.push_back(0);
      }
    }
  }
  return m;
}

inline BassMorphism word_stallings(const std::vector<CyclicWord>& words, std::size_t rank) {
  std::vector<Letters> raw;
  for (const auto& w : words) {
    if (w.rank != rank) throw InputError("words of different ranks");
    raw.push_back(w.letters);
  }
  return word_graph(raw, rank);
}

struct WhiteheadReport {
  BassMorphism morphism;
  StarGraph graph;
  StarVerdict verdict;
};

inline WhiteheadReport whitehead_report(const std::vector<CyclicWord>& words, std::size_t rank) {
  BassMorphism m = word_stallings(words, rank);
  StarGraph sg = build_star_graph(m);
  StarVerdict v = gogstar::verdict(sg);
  return {std::move(m), std::move(sg), std::move(v)};
}

}  // namespace gogstar

#endif
