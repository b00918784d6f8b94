#pragma once

// Line-oriented network format:
//
//   # comment
//   species a b c
//   complex 1 : a + 2*b
//   complex 2 : 0
//   reaction 1 <-> 2 : 3/4, 1.5
//
// Both rates of a reversible pair live on one reaction line (forward, then
// backward), so irreversible networks cannot be written down.

#include "crn/network.hpp"
#include "crn/trees.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace crn {

/// what() is "line k: message" unless the message already names its line.
class ParseError : public InvalidInput {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct SpeciesDecl {
  std::string name;
  int line = 0;
};

struct ComplexDecl {
  int id = 0;
  std::map<std::string, int> coefficients;  // positive entries only
  int line = 0;
};

struct ReactionDecl {
  int from = 0;
  int to = 0;
  Rational forward;
  Rational backward;
  int line = 0;
};

struct NetworkDocument {
  std::vector<SpeciesDecl> species;
  std::vector<ComplexDecl> complexes;  // sorted by id
  std::vector<ReactionDecl> reactions;
};

/// Equal content; source line numbers are ignored.
bool same_content(const NetworkDocument& a, const NetworkDocument& b);

NetworkDocument parse_crn(std::string_view text);
NetworkDocument read_crn_file(const std::string& path);

struct ParsedNetwork {
  Network network;
  RateAssignment rates;
};

/// Resolves names and ids; semantic errors carry the offending line.
ParsedNetwork to_network(const NetworkDocument& doc);

/// Canonical text: one species line, complexes by id, reactions in order.
std::string emit_crn(const NetworkDocument& doc);

/// Document for a network and its rates, one reaction line per pair.
NetworkDocument to_document(const Network& net, const RateAssignment& rates);

}  // namespace crn
