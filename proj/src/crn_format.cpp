#include "crn/crn_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace crn {

ParseError::ParseError(int line, const std::string& message)
    : InvalidInput(message.find(" at line ") != std::string::npos ? message
                                                                   : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_uint(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

int parse_id(std::string_view s, int line, const char* what) {
  s = trim(s);
  if (!is_uint(s) || s.size() > 9) throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(s) + "'");
  return std::stoi(std::string(s));
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

ComplexDecl parse_complex(std::string_view rest, int line) {
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) throw ParseError(line, "expected 'complex ID : TERMS'");
  ComplexDecl c;
  c.id = parse_id(rest.substr(0, colon), line, "a complex id");
  if (c.id == 0) throw ParseError(line, "complex ids start at 1");
  c.line = line;
  std::string_view body = trim(rest.substr(colon + 1));
  if (body.empty()) throw ParseError(line, "complex " + std::to_string(c.id) + " has no terms (write 0 for the zero complex)");
  if (body == "0") return c;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t plus = body.find('+', start);
    std::string_view term = trim(body.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start));
    int coef = 1;
    std::string_view name = term;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      std::string_view count = trim(term.substr(0, star));
      name = trim(term.substr(star + 1));
      if (!is_uint(count) || count.size() > 6 || std::stoi(std::string(count)) == 0)
        throw ParseError(line, "bad coefficient '" + std::string(count) + "'");
      coef = std::stoi(std::string(count));
    }
    if (!is_name(name)) throw ParseError(line, "bad species term '" + std::string(term) + "'");
    c.coefficients[std::string(name)] += coef;
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return c;
}

Rational parse_rate(std::string_view s, int line) {
  Rational r;
  try {
    r = parse_rational(s);
  } catch (const InvalidInput& e) {
    throw ParseError(line, e.what());
  }
  if (r <= 0) throw ParseError(line, "rate " + std::string(trim(s)) + " is not positive");
  return r;
}

ReactionDecl parse_reaction(std::string_view rest, int line) {
  const auto arrow = rest.find("<->");
  const auto colon = rest.find(':');
  if (arrow == std::string_view::npos || colon == std::string_view::npos || colon < arrow)
    throw ParseError(line, "expected 'reaction I <-> J : FORWARD, BACKWARD'");
  ReactionDecl r;
  r.line = line;
  r.from = parse_id(rest.substr(0, arrow), line, "a complex id");
  r.to = parse_id(rest.substr(arrow + 3, colon - arrow - 3), line, "a complex id");
  if (r.from == r.to) throw ParseError(line, "self-loop at line " + std::to_string(line));
  std::string_view rates = rest.substr(colon + 1);
  const auto comma = rates.find(',');
  if (comma == std::string_view::npos || rates.find(',', comma + 1) != std::string_view::npos)
    throw ParseError(line, "expected two rates separated by a comma");
  r.forward = parse_rate(rates.substr(0, comma), line);
  r.backward = parse_rate(rates.substr(comma + 1), line);
  return r;
}

}  // namespace

NetworkDocument parse_crn(std::string_view text) {
  NetworkDocument doc;
  std::set<std::string> species_names;
  std::set<int> complex_ids;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto words = split_ws(line);
      const std::string_view keyword = words.front();
      const std::string_view rest = trim(line.substr(keyword.size()));
      if (keyword == "species") {
        if (words.size() < 2) throw ParseError(line_no, "species line declares no names");
        for (std::size_t w = 1; w < words.size(); ++w) {
          if (!is_name(words[w])) throw ParseError(line_no, "bad species name '" + std::string(words[w]) + "'");
          if (!species_names.insert(std::string(words[w])).second)
            throw ParseError(line_no, "duplicate species '" + std::string(words[w]) + "'");
          doc.species.push_back({std::string(words[w]), line_no});
        }
      } else if (keyword == "complex") {
        ComplexDecl c = parse_complex(rest, line_no);
        if (!complex_ids.insert(c.id).second) throw ParseError(line_no, "duplicate complex id " + std::to_string(c.id));
        doc.complexes.push_back(std::move(c));
      } else if (keyword == "reaction") {
        doc.reactions.push_back(parse_reaction(rest, line_no));
      } else {
        throw ParseError(line_no, "unknown keyword '" + std::string(keyword) + "'");
      }
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }

  std::sort(doc.complexes.begin(), doc.complexes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const ComplexDecl& c : doc.complexes)
    for (const auto& [name, coef] : c.coefficients)
      if (!species_names.count(name)) throw ParseError(c.line, "unknown species '" + name + "'");
  for (std::size_t k = 0; k < doc.complexes.size(); ++k)
    if (doc.complexes[k].id != static_cast<int>(k) + 1)
      throw ParseError(doc.complexes[k].line, "complex ids must be contiguous from 1; missing " + std::to_string(k + 1));
  const int n = static_cast<int>(doc.complexes.size());
  std::set<std::pair<int, int>> pairs;
  for (const ReactionDecl& r : doc.reactions) {
    for (int id : {r.from, r.to})
      if (id < 1 || id > n) throw ParseError(r.line, "reaction references undeclared complex " + std::to_string(id));
    if (!pairs.emplace(std::min(r.from, r.to), std::max(r.from, r.to)).second)
      throw ParseError(r.line, "duplicate reaction between complexes " + std::to_string(r.from) + " and " + std::to_string(r.to));
  }
  return doc;
}

NetworkDocument read_crn_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_crn(buf.str());
}

ParsedNetwork to_network(const NetworkDocument& doc) {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  for (const SpeciesDecl& s : doc.species) {
    index[s.name] = static_cast<int>(names.size());
    names.push_back(s.name);
  }
  Matrix<int> y = Matrix<int>::Zero(static_cast<Eigen::Index>(doc.complexes.size()), static_cast<Eigen::Index>(names.size()));
  std::map<std::vector<int>, int> seen;
  for (std::size_t i = 0; i < doc.complexes.size(); ++i) {
    const ComplexDecl& c = doc.complexes[i];
    for (const auto& [name, coef] : c.coefficients) {
      auto it = index.find(name);
      if (it == index.end()) throw ParseError(c.line, "unknown species '" + name + "'");
      y(static_cast<Eigen::Index>(i), it->second) = coef;
    }
    std::vector<int> row(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) row[k] = y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    auto [prev, fresh] = seen.emplace(row, c.id);
    if (!fresh)
      throw ParseError(c.line, "complex " + std::to_string(c.id) + " duplicates complex " + std::to_string(prev->second));
  }

  std::vector<Edge> edges;
  for (const ReactionDecl& r : doc.reactions) {
    edges.push_back({r.from - 1, r.to - 1});
    edges.push_back({r.to - 1, r.from - 1});
  }
  ParsedNetwork out;
  out.network = build_network(std::move(names), y, edges);
  RationalVector kappa(out.network.edge_count());
  for (const ReactionDecl& r : doc.reactions) {
    kappa(*out.network.edge_index(r.from - 1, r.to - 1)) = r.forward;
    kappa(*out.network.edge_index(r.to - 1, r.from - 1)) = r.backward;
  }
  out.rates = RateAssignment(out.network, std::move(kappa));
  return out;
}

std::string emit_crn(const NetworkDocument& doc) {
  std::ostringstream out;
  if (!doc.species.empty()) {
    out << "species";
    for (const SpeciesDecl& s : doc.species) out << ' ' << s.name;
    out << '\n';
  }
  for (const ComplexDecl& c : doc.complexes) {
    out << "complex " << c.id << " : ";
    bool first = true;
    for (const SpeciesDecl& s : doc.species) {
      auto it = c.coefficients.find(s.name);
      if (it == c.coefficients.end()) continue;
      if (!first) out << " + ";
      if (it->second != 1) out << it->second << '*';
      out << s.name;
      first = false;
    }
    if (first) out << '0';
    out << '\n';
  }
  for (const ReactionDecl& r : doc.reactions)
    out << "reaction " << r.from << " <-> " << r.to << " : " << to_string(r.forward) << ", " << to_string(r.backward)
        << '\n';
  return out.str();
}

NetworkDocument to_document(const Network& net, const RateAssignment& rates) {
  NetworkDocument doc;
  for (const auto& name : net.species()) doc.species.push_back({name, 0});
  for (int i = 0; i < net.complex_count(); ++i) {
    ComplexDecl c{i + 1, {}, 0};
    for (int k = 0; k < net.species_count(); ++k)
      if (net.stoichiometry()(i, k) > 0) c.coefficients[net.species()[static_cast<std::size_t>(k)]] = net.stoichiometry()(i, k);
    doc.complexes.push_back(std::move(c));
  }
  for (int p = 0; p < net.pair_count(); ++p) {
    const Edge& ed = net.edge(2 * p);
    doc.reactions.push_back({ed.source + 1, ed.target + 1, rates[2 * p], rates[2 * p + 1], 0});
  }
  return doc;
}

bool same_content(const NetworkDocument& a, const NetworkDocument& b) {
  if (a.species.size() != b.species.size() || a.complexes.size() != b.complexes.size() ||
      a.reactions.size() != b.reactions.size())
    return false;
  for (std::size_t i = 0; i < a.species.size(); ++i)
    if (a.species[i].name != b.species[i].name) return false;
  for (std::size_t i = 0; i < a.complexes.size(); ++i)
    if (a.complexes[i].id != b.complexes[i].id || a.complexes[i].coefficients != b.complexes[i].coefficients) return false;
  for (std::size_t i = 0; i < a.reactions.size(); ++i) {
    const ReactionDecl &x = a.reactions[i], &y = b.reactions[i];
    if (x.from != y.from || x.to != y.to || x.forward != y.forward || x.backward != y.backward) return false;
  }
  return true;
}

}  // namespace crn
