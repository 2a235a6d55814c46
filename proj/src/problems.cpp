#include "rangectl/problems.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rangectl/errors.hpp"

namespace rangectl {

std::vector<std::string> default_elements(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back("b" + std::to_string(i));
  return out;
}

namespace {

void normalize_sets(std::vector<std::vector<std::size_t>>& sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

void check_elements(const std::vector<std::string>& elements) {
  std::set<std::string> seen;
  for (const auto& e : elements) {
    if (e.empty() || e.find_first_of(" \t\n,{}=") != std::string::npos) {
      throw ValidationError("invalid element name '" + e + "'");
    }
    if (!seen.insert(e).second) throw ValidationError("duplicate element '" + e + "'");
  }
}

std::string encode_sets(const std::vector<std::string>& elements, const std::vector<std::vector<std::size_t>>& sets) {
  std::string out;
  for (const auto& s : sets) {
    out += '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != 0) out += ',';
      out += elements.at(s[i]);
    }
    out += '}';
  }
  return out;
}

std::map<std::string, std::string> split_fields(const std::string& text) {
  std::map<std::string, std::string> fields;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError(0, "malformed field '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return fields;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::vector<std::size_t>> decode_sets(const std::vector<std::string>& elements, const std::string& text) {
  std::vector<std::vector<std::size_t>> sets;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '{') throw ParseError(0, "expected '{' in set list");
    auto close = text.find('}', pos);
    if (close == std::string::npos) throw ParseError(0, "unterminated set");
    std::vector<std::size_t> set;
    for (const auto& name : split_commas(text.substr(pos + 1, close - pos - 1))) {
      auto it = std::find(elements.begin(), elements.end(), name);
      if (it == elements.end()) throw ParseError(0, "unknown element '" + name + "'");
      set.push_back(static_cast<std::size_t>(it - elements.begin()));
    }
    sets.push_back(std::move(set));
    pos = close + 1;
  }
  return sets;
}

std::vector<std::string> decode_elements(const std::map<std::string, std::string>& fields, std::size_t n) {
  auto it = fields.find("B");
  if (it == fields.end()) return default_elements(n);
  return split_commas(it->second);
}

std::int64_t field_int(const std::map<std::string, std::string>& fields, const std::string& key) {
  auto it = fields.find(key);
  if (it == fields.end()) throw ParseError(0, "missing field '" + key + "'");
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    throw ParseError(0, "field '" + key + "' is not an integer");
  }
}

}  // namespace

void HittingSetInstance::validate() const {
  check_elements(elements);
  if (sets.empty()) throw ValidationError("hitting set family must be nonempty");
  for (const auto& s : sets) {
    if (s.empty()) throw ValidationError("hitting set family contains an empty set");
    for (auto e : s) {
      if (e >= elements.size()) throw ValidationError("set references an unknown element");
    }
  }
  if (k < 1 || k > static_cast<std::int64_t>(n())) throw ValidationError("hitting set budget must satisfy 1 <= k <= n");
}

void HittingSetInstance::normalize() { normalize_sets(sets); }

std::string HittingSetInstance::encode() const {
  std::ostringstream out;
  out << "n=" << n() << " m=" << m() << " k=" << k;
  if (elements != default_elements(n())) {
    out << " B=";
    for (std::size_t i = 0; i < elements.size(); ++i) out << (i ? "," : "") << elements[i];
  }
  out << " S=" << encode_sets(elements, sets);
  return out.str();
}

HittingSetInstance HittingSetInstance::decode(const std::string& text) {
  auto fields = split_fields(text);
  HittingSetInstance out;
  out.elements = decode_elements(fields, static_cast<std::size_t>(field_int(fields, "n")));
  out.k = field_int(fields, "k");
  out.sets = decode_sets(out.elements, fields.count("S") ? fields["S"] : "");
  out.normalize();
  out.validate();
  return out;
}

void X3CInstance::validate() const {
  check_elements(elements);
  if (elements.empty() || elements.size() % 3 != 0) throw ValidationError("X3C universe size must be 3k with k >= 1");
  for (const auto& s : sets) {
    if (s.size() != 3) throw ValidationError("X3C sets must have exactly three distinct elements");
    for (auto e : s) {
      if (e >= elements.size()) throw ValidationError("set references an unknown element");
    }
  }
  if (sets.size() < k()) throw ValidationError("X3C needs at least k sets");
}

void X3CInstance::validate_covering() const {
  validate();
  std::vector<bool> covered(elements.size(), false);
  for (const auto& s : sets) {
    for (auto e : s) covered[e] = true;
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) throw ValidationError("element '" + elements[i] + "' is in no set");
  }
}

void X3CInstance::normalize() { normalize_sets(sets); }

std::string X3CInstance::encode() const {
  std::ostringstream out;
  out << "k=" << k() << " s=" << sets.size();
  if (elements != default_elements(elements.size())) {
    out << " B=";
    for (std::size_t i = 0; i < elements.size(); ++i) out << (i ? "," : "") << elements[i];
  }
  out << " S=" << encode_sets(elements, sets);
  return out.str();
}

X3CInstance X3CInstance::decode(const std::string& text) {
  auto fields = split_fields(text);
  X3CInstance out;
  out.elements = decode_elements(fields, static_cast<std::size_t>(3 * field_int(fields, "k")));
  out.sets = decode_sets(out.elements, fields.count("S") ? fields["S"] : "");
  out.normalize();
  out.validate();
  return out;
}

}  // namespace rangectl
