#include "pebbletl/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pebbletl {

TraceModel::TraceModel(std::vector<std::string> domain, std::size_t length)
    : domain_(std::move(domain)), length_(length) {
  for (int i = 0; i < static_cast<int>(domain_.size()); ++i)
    ids_.emplace(domain_[i], i);
}

std::optional<int> TraceModel::element_id(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void TraceModel::set_constant(const std::string& c,
                              const std::vector<std::string>& elems) {
  std::vector<int> ids;
  ids.reserve(elems.size());
  for (const auto& e : elems) {
    auto id = element_id(e);
    if (!id) throw ModelError("element '" + e + "' not in domain");
    ids.push_back(*id);
  }
  const_tl_[c] = std::move(ids);
}

void TraceModel::set_constant_ids(const std::string& c, std::vector<int> elems) {
  const_tl_[c] = std::move(elems);
}

void TraceModel::set_predicate(const std::string& p, std::vector<TupleSet> steps) {
  pred_tl_[p] = std::move(steps);
}

std::vector<std::string> TraceModel::constants() const {
  std::vector<std::string> out;
  out.reserve(const_tl_.size());
  for (const auto& [name, tl] : const_tl_) out.push_back(name);
  return out;
}

std::vector<std::string> TraceModel::predicates() const {
  std::vector<std::string> out;
  out.reserve(pred_tl_.size());
  for (const auto& [name, tl] : pred_tl_) out.push_back(name);
  return out;
}

std::size_t TraceModel::resolve(std::size_t n) const {
  if (n < length_) return n;
  if (!lasso_)
    throw ModelError("time index " + std::to_string(n) +
                     " is beyond the observed prefix (length " +
                     std::to_string(length_) + ")");
  const auto [k, p] = *lasso_;
  return k + (n - k) % p;
}

const std::vector<int>& TraceModel::constant_timeline(const std::string& c) const {
  auto it = const_tl_.find(c);
  if (it == const_tl_.end()) throw ModelError("unknown constant '" + c + "'");
  return it->second;
}

const std::vector<TupleSet>& TraceModel::predicate_timeline(
    const std::string& p) const {
  auto it = pred_tl_.find(p);
  if (it == pred_tl_.end()) throw ModelError("unknown predicate '" + p + "'");
  return it->second;
}

int TraceModel::constant_id_at(const std::string& c, std::size_t n) const {
  return constant_timeline(c).at(resolve(n));
}

const std::string& TraceModel::constant_at(const std::string& c,
                                           std::size_t n) const {
  return domain_.at(constant_id_at(c, n));
}

std::set<int> TraceModel::visited_ids(const std::string& c, std::size_t n) const {
  const auto& tl = constant_timeline(c);
  // Past the first full loop traversal every stored position has been seen.
  std::size_t last = n;
  if (lasso_ && n >= length_) last = length_ - 1;
  if (!lasso_ && n >= length_)
    throw ModelError("time index " + std::to_string(n) +
                     " is beyond the observed prefix (length " +
                     std::to_string(length_) + ")");
  std::set<int> out;
  for (std::size_t m = 0; m <= last; ++m) out.insert(tl.at(resolve(m)));
  return out;
}

std::set<std::string> TraceModel::visited(const std::string& c,
                                          std::size_t n) const {
  std::set<std::string> out;
  for (int id : visited_ids(c, n)) out.insert(domain_.at(id));
  return out;
}

const TupleSet& TraceModel::predicate_at(const std::string& p,
                                         std::size_t n) const {
  return predicate_timeline(p).at(resolve(n));
}

std::vector<Diagnostic> validate_model(const TraceModel& m) {
  std::vector<Diagnostic> out;
  if (m.domain().empty()) out.push_back({"domain is empty"});
  {
    std::set<std::string> seen;
    for (const auto& e : m.domain())
      if (!seen.insert(e).second)
        out.push_back({"duplicate domain element '" + e + "'"});
  }
  if (m.length() == 0) out.push_back({"model length must be >= 1"});
  if (m.has_lasso()) {
    if (m.lasso_period() == 0) out.push_back({"lasso period must be >= 1"});
    if (m.lasso_prefix() + m.lasso_period() != m.length())
      out.push_back({"lasso prefix + period (" +
                     std::to_string(m.lasso_prefix()) + " + " +
                     std::to_string(m.lasso_period()) +
                     ") does not equal timeline length " +
                     std::to_string(m.length())});
  }
  const int dom = static_cast<int>(m.domain().size());
  for (const auto& c : m.constants()) {
    const auto& tl = m.constant_timeline(c);
    if (tl.size() != m.length())
      out.push_back({"constant '" + c + "' timeline has length " +
                     std::to_string(tl.size()) + ", expected " +
                     std::to_string(m.length())});
    for (int id : tl)
      if (id < 0 || id >= dom) {
        out.push_back({"constant '" + c + "' leaves the domain"});
        break;
      }
  }
  for (const auto& p : m.predicates()) {
    const auto& tl = m.predicate_timeline(p);
    if (tl.size() != m.length())
      out.push_back({"predicate '" + p + "' timeline has length " +
                     std::to_string(tl.size()) + ", expected " +
                     std::to_string(m.length())});
    std::optional<std::size_t> arity;
    for (const auto& step : tl)
      for (const auto& tuple : step) {
        if (!arity) arity = tuple.size();
        if (tuple.size() != *arity) {
          out.push_back({"predicate '" + p + "' mixes tuple arities"});
          goto next_pred;
        }
        for (int id : tuple)
          if (id < 0 || id >= dom) {
            out.push_back({"predicate '" + p + "' mentions an element outside the domain"});
            goto next_pred;
          }
      }
  next_pred:;
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

// Strips a trailing "[loop k p]" marker, if present, recording it.
std::string take_loop_marker(std::string body,
                             std::optional<std::pair<std::size_t, std::size_t>>& loop,
                             std::optional<std::pair<std::size_t, std::size_t>>& model_loop) {
  const auto open = body.rfind('[');
  if (open == std::string::npos) return body;
  std::string marker = trim(body.substr(open + 1));
  if (marker.empty() || marker.back() != ']')
    throw ModelError("malformed loop marker in: " + body);
  marker.pop_back();
  std::istringstream in(trim(marker));
  std::string word;
  std::size_t k = 0, p = 0;
  if (!(in >> word >> k >> p) || word != "loop" || !(in >> std::ws).eof())
    throw ModelError("malformed loop marker '[" + trim(marker) + "]'");
  loop = {k, p};
  if (model_loop && *model_loop != *loop)
    throw ModelError("conflicting loop markers");
  model_loop = *loop;
  return trim(body.substr(0, open));
}

std::vector<int> parse_tuple(const std::string& text, const TraceModel& m) {
  std::vector<int> tuple;
  for (const auto& name : split(text, ',')) {
    if (name.empty()) continue;
    auto id = m.element_id(name);
    if (!id) throw ModelError("element '" + name + "' not in domain");
    tuple.push_back(*id);
  }
  return tuple;
}

TupleSet parse_tuple_set(const std::string& text, const TraceModel& m) {
  const std::string t = trim(text);
  if (t.empty() || t.front() != '{' || t.back() != '}')
    throw ModelError("expected a { ... } tuple set, got: " + text);
  TupleSet out;
  std::string inner = trim(t.substr(1, t.size() - 2));
  std::size_t i = 0;
  while (i < inner.size()) {
    if (std::isspace(static_cast<unsigned char>(inner[i])) || inner[i] == ',') {
      ++i;
      continue;
    }
    if (inner[i] != '(')
      throw ModelError("expected '(' inside tuple set, got: " + inner);
    const auto close = inner.find(')', i);
    if (close == std::string::npos)
      throw ModelError("unterminated tuple in: " + inner);
    out.insert(parse_tuple(inner.substr(i + 1, close - i - 1), m));
    i = close + 1;
  }
  return out;
}

}  // namespace

TraceModel read_model(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  std::optional<TraceModel> model;
  std::optional<std::pair<std::size_t, std::size_t>> model_loop;
  std::optional<std::size_t> length;
  struct PendingConst { std::string name; std::vector<std::string> elems; };
  struct PendingPred { std::string name; std::vector<std::string> steps; };
  std::vector<PendingConst> consts;
  std::vector<PendingPred> preds;
  std::vector<std::string> domain;

  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("domain:", 0) == 0) {
      if (!domain.empty()) throw ModelError("duplicate domain: line");
      for (auto& e : split(t.substr(7), ','))
        if (!e.empty()) domain.push_back(e);
      continue;
    }
    if (t.rfind("const ", 0) == 0) {
      const auto colon = t.find(':');
      if (colon == std::string::npos) throw ModelError("const line missing ':'");
      std::optional<std::pair<std::size_t, std::size_t>> loop;
      std::string body = take_loop_marker(trim(t.substr(colon + 1)), loop, model_loop);
      PendingConst pc;
      pc.name = trim(t.substr(6, colon - 6));
      if (pc.name.empty()) throw ModelError("const line missing a name");
      for (auto& e : split(body, ','))
        if (!e.empty()) pc.elems.push_back(e);
      consts.push_back(std::move(pc));
      continue;
    }
    if (t.rfind("pred ", 0) == 0) {
      const auto colon = t.find(':');
      if (colon == std::string::npos) throw ModelError("pred line missing ':'");
      std::optional<std::pair<std::size_t, std::size_t>> loop;
      std::string body = take_loop_marker(trim(t.substr(colon + 1)), loop, model_loop);
      PendingPred pp;
      pp.name = trim(t.substr(5, colon - 5));
      if (pp.name.empty()) throw ModelError("pred line missing a name");
      for (auto& s : split(body, ';'))
        if (!s.empty()) pp.steps.push_back(s);
      preds.push_back(std::move(pp));
      continue;
    }
    throw ModelError("unrecognized model line: " + t);
  }

  if (domain.empty()) throw ModelError("model file has no domain: line");
  for (const auto& pc : consts) {
    if (!length) length = pc.elems.size();
    if (pc.elems.size() != *length)
      throw ModelError("constant '" + pc.name + "' timeline length mismatch");
  }
  for (const auto& pp : preds) {
    if (!length) length = pp.steps.size();
    if (pp.steps.size() != *length)
      throw ModelError("predicate '" + pp.name + "' timeline length mismatch");
  }
  if (!length)
    throw ModelError("model file declares no timelines; length is undefined");

  TraceModel m(domain, *length);
  if (model_loop) m.set_lasso(model_loop->first, model_loop->second);
  for (const auto& pc : consts) {
    if (m.has_constant(pc.name))
      throw ModelError("duplicate constant '" + pc.name + "'");
    m.set_constant(pc.name, pc.elems);
  }
  for (const auto& pp : preds) {
    if (m.has_predicate(pp.name))
      throw ModelError("duplicate predicate '" + pp.name + "'");
    std::vector<TupleSet> steps;
    steps.reserve(pp.steps.size());
    for (const auto& s : pp.steps) steps.push_back(parse_tuple_set(s, m));
    m.set_predicate(pp.name, std::move(steps));
  }
  auto issues = validate_model(m);
  if (!issues.empty()) throw ModelError("invalid model: " + issues.front().message);
  return m;
}

std::string write_model(const TraceModel& m) {
  std::ostringstream out;
  out << "domain:";
  for (std::size_t i = 0; i < m.domain().size(); ++i)
    out << (i == 0 ? " " : ", ") << m.domain()[i];
  out << "\n";
  const std::string marker =
      m.has_lasso() ? " [loop " + std::to_string(m.lasso_prefix()) + " " +
                          std::to_string(m.lasso_period()) + "]"
                    : "";
  for (const auto& c : m.constants()) {
    out << "const " << c << ":";
    const auto& tl = m.constant_timeline(c);
    for (std::size_t i = 0; i < tl.size(); ++i)
      out << (i == 0 ? " " : ", ") << m.element_name(tl[i]);
    out << marker << "\n";
  }
  for (const auto& p : m.predicates()) {
    out << "pred " << p << ":";
    const auto& tl = m.predicate_timeline(p);
    for (std::size_t i = 0; i < tl.size(); ++i) {
      out << (i == 0 ? " " : "; ");
      if (tl[i].empty()) {
        out << "{ }";
      } else {
        out << "{ ";
        bool first = true;
        for (const auto& tuple : tl[i]) {
          if (!first) out << ", ";
          first = false;
          out << "(";
          for (std::size_t j = 0; j < tuple.size(); ++j)
            out << (j == 0 ? "" : ", ") << m.element_name(tuple[j]);
          out << ")";
        }
        out << " }";
      }
    }
    out << marker << "\n";
  }
  return out.str();
}

TraceModel double_period(const TraceModel& m) {
  if (!m.has_lasso()) throw ModelError("double_period needs a lasso model");
  const std::size_t k = m.lasso_prefix();
  const std::size_t p = m.lasso_period();
  TraceModel out(m.domain(), m.length() + p);
  out.set_lasso(k, 2 * p);
  for (const auto& c : m.constants()) {
    auto tl = m.constant_timeline(c);
    for (std::size_t i = 0; i < p; ++i) tl.push_back(tl[k + i]);
    out.set_constant_ids(c, std::move(tl));
  }
  for (const auto& pr : m.predicates()) {
    auto tl = m.predicate_timeline(pr);
    for (std::size_t i = 0; i < p; ++i) tl.push_back(tl[k + i]);
    out.set_predicate(pr, std::move(tl));
  }
  return out;
}

}  // namespace pebbletl
