#include "qcn/algebra.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "calculi_data.hpp"
#include "json.hpp"

namespace qcn {

using nlohmann::json;

std::vector<int> Relation::ids() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count()));
  for_each([&](int id) { out.push_back(id); });
  return out;
}

Calculus::Calculus(std::string name, std::vector<BasicRelation> basics, int identity,
                   std::vector<Relation> table)
    : name_(std::move(name)), basics_(std::move(basics)), identity_(identity), table_(std::move(table)) {
  const int p = size();
  if (p == 0) throw CalculusError("calculus '" + name_ + "' has no basic relations");
  if (p > Relation::kMaxBasics)
    throw CalculusError("calculus '" + name_ + "' has " + std::to_string(p) +
                        " basic relations; at most 32 are supported");
  if (table_.size() != static_cast<std::size_t>(p * p))
    throw CalculusError("composition table of '" + name_ + "' is not " + std::to_string(p) + "x" +
                        std::to_string(p));
  universal_ = Relation(p == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << p) - 1);
  validate();

  weights_.resize(static_cast<std::size_t>(p));
  for (int a = 0; a < p; ++a) {
    int w = 0;
    for (int b = 0; b < p; ++b) w += compose_basic(a, b).count();
    weights_[static_cast<std::size_t>(a)] = w;
  }
  universal_absorbs_ = true;
  for (int b = 0; b < p && universal_absorbs_; ++b) {
    const Relation single = Relation::single(b);
    universal_absorbs_ = compose(universal_, single) == universal_ && compose(single, universal_) == universal_;
  }
}

void Calculus::validate() const {
  const int p = size();
  std::unordered_set<std::string> seen;
  for (int k = 0; k < p; ++k) {
    const auto& b = basics_[static_cast<std::size_t>(k)];
    if (b.id != k) throw CalculusError(name_ + ": basic relation ids must be 0..p-1 in order");
    if (b.symbol.empty()) throw CalculusError(name_ + ": empty basic relation symbol");
    if (!seen.insert(b.symbol).second) throw CalculusError(name_ + ": duplicate symbol '" + b.symbol + "'");
    if (b.inverse_id < 0 || b.inverse_id >= p)
      throw CalculusError(name_ + ": inverse of '" + b.symbol + "' out of range");
  }
  for (int k = 0; k < p; ++k) {
    if (inverse(inverse(k)) != k)
      throw CalculusError(name_ + ": inverse is not an involution at '" + symbol(k) + "'");
  }
  if (identity_ < 0 || identity_ >= p) throw CalculusError(name_ + ": identity out of range");
  if (inverse(identity_) != identity_) throw CalculusError(name_ + ": identity relation is not self-inverse");
  for (const Relation r : table_) {
    if (!universal_.contains(r)) throw CalculusError(name_ + ": composition entry outside the universe");
  }
  for (int k = 0; k < p; ++k) {
    const Relation single = Relation::single(k);
    if (compose_basic(identity_, k) != single || compose_basic(k, identity_) != single)
      throw CalculusError(name_ + ": identity law fails at '" + symbol(k) + "'");
  }
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      if (inverse(compose_basic(a, b)) != compose_basic(inverse(b), inverse(a)))
        throw CalculusError(name_ + ": converse law fails at (" + symbol(a) + ", " + symbol(b) + ")");
    }
  }
}

std::optional<int> Calculus::find(std::string_view symbol) const {
  for (const auto& b : basics_) {
    if (b.symbol == symbol) return b.id;
  }
  return std::nullopt;
}

Relation Calculus::compose(Relation r1, Relation r2) const {
  if (r1.empty() || r2.empty()) return {};
  if (universal_absorbs_ && (r1 == universal_ || r2 == universal_)) return universal_;
  Relation out;
  r1.for_each([&](int a) {
    const Relation* row = &table_[static_cast<std::size_t>(a * size())];
    r2.for_each([&](int b) { out |= row[b]; });
  });
  return out;
}

Relation Calculus::compose_within(Relation r1, Relation r2, Relation mask) const {
  if (r1.empty() || r2.empty() || mask.empty()) return {};
  if (universal_absorbs_ && (r1 == universal_ || r2 == universal_)) return mask;
  Relation supported;
  for (std::uint32_t rest1 = r1.bits(); rest1 != 0; rest1 &= rest1 - 1) {
    const Relation* row = &table_[static_cast<std::size_t>(std::countr_zero(rest1) * size())];
    for (std::uint32_t rest2 = r2.bits(); rest2 != 0; rest2 &= rest2 - 1) {
      supported |= row[std::countr_zero(rest2)] & mask;
      if (supported == mask) return mask;
    }
  }
  return supported;
}

Relation Calculus::inverse(Relation r) const {
  Relation out;
  r.for_each([&](int id) { out = out.with(inverse(id)); });
  return out;
}

Relation Calculus::parse(std::span<const std::string> symbols) const {
  Relation out;
  for (const auto& s : symbols) {
    const auto id = find(s);
    if (!id) throw CalculusError("unknown relation symbol '" + s + "' for calculus '" + name_ + "'");
    out = out.with(*id);
  }
  return out;
}

std::vector<std::string> Calculus::symbols(Relation r) const {
  std::vector<std::string> out;
  r.for_each([&](int id) { out.push_back(symbol(id)); });
  return out;
}

std::string Calculus::format(Relation r) const {
  std::string out = "{";
  bool first = true;
  r.for_each([&](int id) {
    if (!first) out += ", ";
    out += symbol(id);
    first = false;
  });
  return out + "}";
}

std::string Calculus::to_json() const {
  json doc;
  doc["name"] = name_;
  doc["identity"] = symbol(identity_);
  for (const auto& b : basics_) {
    doc["basics"].push_back({{"symbol", b.symbol}, {"inverse", symbol(b.inverse_id)}, {"phrase", b.phrase}});
  }
  for (int a = 0; a < size(); ++a) {
    json row = json::array();
    for (int b = 0; b < size(); ++b) row.push_back(symbols(compose_basic(a, b)));
    doc["composition"].push_back(std::move(row));
  }
  return doc.dump(2);
}

namespace {

std::vector<std::string> split_symbols(const char* cell) {
  std::vector<std::string> out;
  std::istringstream in(cell);
  for (std::string s; in >> s;) out.push_back(s);
  return out;
}

template <std::size_t P>
CalculusPtr build_builtin(const char* name, const detail::BasicSpec (&specs)[P],
                          const char* const (&table)[P][P], const char* identity) {
  std::vector<BasicRelation> basics;
  auto index_of = [&](std::string_view sym) {
    for (std::size_t k = 0; k < P; ++k) {
      if (sym == specs[k].symbol) return static_cast<int>(k);
    }
    throw CalculusError(std::string("built-in table references unknown symbol ") + std::string(sym));
  };
  for (std::size_t k = 0; k < P; ++k) {
    basics.push_back({static_cast<int>(k), specs[k].symbol, index_of(specs[k].inverse), specs[k].phrase});
  }
  std::vector<Relation> cells;
  cells.reserve(P * P);
  for (std::size_t a = 0; a < P; ++a) {
    for (std::size_t b = 0; b < P; ++b) {
      Relation r;
      for (const auto& s : split_symbols(table[a][b])) r = r.with(index_of(s));
      cells.push_back(r);
    }
  }
  return std::make_shared<const Calculus>(name, std::move(basics), index_of(identity), std::move(cells));
}

}  // namespace

CalculusPtr interval_algebra() {
  static const CalculusPtr calc = build_builtin("ia", detail::kIntervalBasics, detail::kIntervalTable, "E");
  return calc;
}

CalculusPtr rcc8() {
  static const CalculusPtr calc = build_builtin("rcc8", detail::kRcc8Basics, detail::kRcc8Table, "EQ");
  return calc;
}

CalculusPtr point_algebra() {
  static const CalculusPtr calc = build_builtin("point", detail::kPointBasics, detail::kPointTable, "=");
  return calc;
}

CalculusPtr parse_calculus_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CalculusError(std::string("malformed calculus definition: ") + e.what());
  }
  try {
    const auto name = doc.at("name").get<std::string>();
    const auto& jbasics = doc.at("basics");
    if (!jbasics.is_array()) throw CalculusError("calculus 'basics' must be an array");
    if (jbasics.size() > Relation::kMaxBasics)
      throw CalculusError("calculus '" + name + "' has " + std::to_string(jbasics.size()) +
                          " basic relations; at most 32 are supported");
    std::vector<std::string> syms;
    for (const auto& b : jbasics) syms.push_back(b.at("symbol").get<std::string>());
    auto index_of = [&](const std::string& s) {
      for (std::size_t k = 0; k < syms.size(); ++k) {
        if (syms[k] == s) return static_cast<int>(k);
      }
      throw CalculusError("calculus '" + name + "' references unknown symbol '" + s + "'");
    };
    std::vector<BasicRelation> basics;
    for (std::size_t k = 0; k < jbasics.size(); ++k) {
      const auto& b = jbasics[k];
      std::string phrase = b.value("phrase", "stand in relation " + syms[k] + " to");
      basics.push_back({static_cast<int>(k), syms[k], index_of(b.at("inverse").get<std::string>()), phrase});
    }
    const int identity = index_of(doc.at("identity").get<std::string>());
    const auto& comp = doc.at("composition");
    const std::size_t p = syms.size();
    if (!comp.is_array() || comp.size() != p) throw CalculusError("composition table must have p rows");
    std::vector<Relation> cells;
    for (const auto& row : comp) {
      if (!row.is_array() || row.size() != p) throw CalculusError("composition table must have p columns");
      for (const auto& cell : row) {
        Relation r;
        for (const auto& s : cell) r = r.with(index_of(s.get<std::string>()));
        cells.push_back(r);
      }
    }
    return std::make_shared<const Calculus>(name, std::move(basics), identity, std::move(cells));
  } catch (const json::exception& e) {
    throw CalculusError(std::string("malformed calculus definition: ") + e.what());
  }
}

CalculusPtr load_calculus(std::string_view name_or_path) {
  if (name_or_path == "ia") return interval_algebra();
  if (name_or_path == "rcc8") return rcc8();
  if (name_or_path == "point") return point_algebra();
  std::ifstream in{std::string(name_or_path)};
  if (!in) throw CalculusError("unknown calculus '" + std::string(name_or_path) + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_calculus_json(buffer.str());
}

}  // namespace qcn
