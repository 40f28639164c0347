#include "pndiag/net.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace pndiag {

Marking::Marking(std::initializer_list<std::pair<const PlaceId, std::uint32_t>> counts) {
  for (const auto& [p, n] : counts) set(p, n);
}

std::uint32_t Marking::operator[](PlaceId p) const {
  const auto it = counts_.find(p);
  return it == counts_.end() ? 0 : it->second;
}

void Marking::set(PlaceId p, std::uint32_t count) {
  if (count == 0) {
    counts_.erase(p);
  } else {
    counts_[p] = count;
  }
}

void Marking::add(PlaceId p, std::uint32_t count) {
  if (count != 0) counts_[p] += count;
}

void Marking::take(PlaceId p) {
  const auto it = counts_.find(p);
  if (it == counts_.end()) {
    throw Error(ErrorCode::kDisabledTransition, "cannot take a token from an empty place");
  }
  if (--it->second == 0) counts_.erase(it);
}

std::uint64_t Marking::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

bool Marking::covers(const Marking& other) const {
  return std::all_of(other.counts_.begin(), other.counts_.end(),
                     [this](const auto& kv) { return (*this)[kv.first] >= kv.second; });
}

namespace {

void normalize(std::vector<PlaceId>& places) {
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
}

}  // namespace

NetSystem::NetSystem(std::vector<std::string> place_names, std::vector<Transition> transitions,
                     Marking initial, Labeling labeling)
    : place_names_(std::move(place_names)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      labeling_(std::move(labeling)) {
  for (std::size_t i = 0; i < place_names_.size(); ++i) {
    const auto [it, inserted] =
        place_index_.emplace(place_names_[i], PlaceId{static_cast<std::uint32_t>(i)});
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateName, "duplicate place name '" + place_names_[i] + "'");
    }
  }
  const auto check_place = [this](PlaceId p, const std::string& where) {
    if (p.index >= place_names_.size()) {
      throw Error(ErrorCode::kUnknownPlace,
                  "unknown place index " + std::to_string(p.index) + " in " + where);
    }
  };
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    Transition& t = transitions_[i];
    t.id = TransitionId{static_cast<std::uint32_t>(i)};
    if (!transition_index_.emplace(t.name, t.id).second) {
      throw Error(ErrorCode::kDuplicateName, "duplicate name '" + t.name + "'");
    }
    normalize(t.pre);
    normalize(t.post);
    if (t.pre.empty()) {
      throw Error(ErrorCode::kEmptyPreset, "transition '" + t.name + "' has no input place");
    }
    for (const PlaceId p : t.pre) check_place(p, "transition '" + t.name + "'");
    for (const PlaceId p : t.post) check_place(p, "transition '" + t.name + "'");
  }
  for (const auto& [p, n] : initial_.counts()) check_place(p, "initial marking");
  for (const auto* ids : {&labeling_.observable(), &labeling_.fault()}) {
    for (const TransitionId t : *ids) {
      if (t.index >= transitions_.size()) {
        throw Error(ErrorCode::kUnknownTransition,
                    "labeling mentions unknown transition index " + std::to_string(t.index));
      }
    }
  }
}

const Transition& NetSystem::transition(TransitionId t) const {
  if (t.index >= transitions_.size()) {
    throw Error(ErrorCode::kUnknownTransition, "unknown transition index " + std::to_string(t.index));
  }
  return transitions_[t.index];
}

const std::string& NetSystem::name(PlaceId p) const {
  if (p.index >= place_names_.size()) {
    throw Error(ErrorCode::kUnknownPlace, "unknown place index " + std::to_string(p.index));
  }
  return place_names_[p.index];
}

const std::string& NetSystem::name(TransitionId t) const { return transition(t).name; }

std::optional<PlaceId> NetSystem::find_place(std::string_view name) const {
  const auto it = place_index_.find(std::string(name));
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TransitionId> NetSystem::find_transition(std::string_view name) const {
  const auto it = transition_index_.find(std::string(name));
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const NetSystem& a, const NetSystem& b) {
  if (a.place_names_ != b.place_names_ || a.initial_ != b.initial_ || !(a.labeling_ == b.labeling_) ||
      a.transitions_.size() != b.transitions_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.transitions_.size(); ++i) {
    const Transition& x = a.transitions_[i];
    const Transition& y = b.transitions_[i];
    if (x.name != y.name || x.pre != y.pre || x.post != y.post) return false;
  }
  return true;
}

PlaceId NetBuilder::add_place(std::string name) {
  places_.push_back(std::move(name));
  return PlaceId{static_cast<std::uint32_t>(places_.size() - 1)};
}

PlaceId NetBuilder::require_place(const std::string& name) const {
  const auto it = std::find(places_.begin(), places_.end(), name);
  if (it == places_.end()) throw Error(ErrorCode::kUnknownPlace, "unknown place '" + name + "'");
  return PlaceId{static_cast<std::uint32_t>(it - places_.begin())};
}

TransitionId NetBuilder::add_transition(std::string name, const std::vector<std::string>& pre,
                                        const std::vector<std::string>& post, TransitionKind kind) {
  const TransitionId id{static_cast<std::uint32_t>(transitions_.size())};
  Transition t{id, std::move(name), {}, {}};
  for (const auto& p : pre) t.pre.push_back(require_place(p));
  for (const auto& p : post) t.post.push_back(require_place(p));
  transitions_.push_back(std::move(t));
  if (kind == TransitionKind::kObservable) observable_.insert(id);
  if (kind == TransitionKind::kFault) fault_.insert(id);
  return id;
}

NetBuilder& NetBuilder::mark(const std::string& place, std::uint32_t count) {
  initial_.add(require_place(place), count);
  return *this;
}

NetSystem NetBuilder::build() const {
  return NetSystem(places_, transitions_, initial_, Labeling(observable_, fault_));
}

bool is_enabled(const NetSystem& net, const Marking& m, TransitionId t) {
  const Transition& tr = net.transition(t);
  return std::all_of(tr.pre.begin(), tr.pre.end(), [&](PlaceId p) { return m[p] >= 1; });
}

Marking fire(const NetSystem& net, const Marking& m, TransitionId t) {
  if (!is_enabled(net, m, t)) {
    throw Error(ErrorCode::kDisabledTransition,
                "transition '" + net.name(t) + "' is not enabled at " + format_marking(net, m));
  }
  const Transition& tr = net.transition(t);
  Marking next = m;
  for (const PlaceId p : tr.pre) next.take(p);
  for (const PlaceId p : tr.post) next.add(p);
  return next;
}

Marking fire_sequence(const NetSystem& net, const Marking& m, const FiringSequence& s) {
  Marking current = m;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!is_enabled(net, current, s[k])) {
      throw FiringError(k, current,
                        "step " + std::to_string(k) + ": transition '" + net.name(s[k]) +
                            "' is not enabled at " + format_marking(net, current));
    }
    current = fire(net, current, s[k]);
  }
  return current;
}

std::vector<TransitionId> enabled_set(const NetSystem& net, const Marking& m) {
  std::vector<TransitionId> out;
  for (const Transition& t : net.transitions()) {
    if (is_enabled(net, m, t.id)) out.push_back(t.id);
  }
  return out;
}

StructureReport check_structure(const NetSystem& net) {
  StructureReport report;
  report.fault_count = net.labeling().fault().size();

  // Bipartite graph: nodes [0, P) are places, [P, P+T) transitions. Only arcs
  // of unobservable transitions are present.
  const std::size_t places = net.place_count();
  const std::size_t nodes = places + net.transition_count();
  std::vector<std::vector<std::size_t>> succ(nodes);
  for (const Transition& t : net.transitions()) {
    if (net.labeling().is_observable(t.id)) continue;
    const std::size_t tn = places + t.id.index;
    for (const PlaceId p : t.pre) succ[p.index].push_back(tn);
    for (const PlaceId p : t.post) succ[tn].push_back(p.index);
  }

  enum class Color { kWhite, kGrey, kBlack };
  std::vector<Color> color(nodes, Color::kWhite);
  std::vector<std::size_t> stack;
  const auto node_name = [&](std::size_t n) -> const std::string& {
    return n < places ? net.name(PlaceId{static_cast<std::uint32_t>(n)})
                      : net.name(TransitionId{static_cast<std::uint32_t>(n - places)});
  };

  std::function<bool(std::size_t)> visit = [&](std::size_t n) {
    color[n] = Color::kGrey;
    stack.push_back(n);
    for (const std::size_t next : succ[n]) {
      if (color[next] == Color::kGrey) {
        const auto from = std::find(stack.begin(), stack.end(), next);
        for (auto it = from; it != stack.end(); ++it) report.cycle_witness.push_back(node_name(*it));
        report.cycle_witness.push_back(node_name(next));
        return true;
      }
      if (color[next] == Color::kWhite && visit(next)) return true;
    }
    stack.pop_back();
    color[n] = Color::kBlack;
    return false;
  };
  for (std::size_t n = 0; n < places; ++n) {
    if (color[n] == Color::kWhite && visit(n)) {
      report.unobservable_acyclic = false;
      break;
    }
  }

  if (!report.unobservable_acyclic) {
    std::string cycle;
    for (const auto& name : report.cycle_witness) cycle += (cycle.empty() ? "" : " -> ") + name;
    report.findings.push_back("unobservable subnet has a cycle: " + cycle);
  }
  if (report.fault_count == 0) report.findings.push_back("no fault transition");
  return report;
}

void require_diagnosable_structure(const NetSystem& net) {
  const StructureReport report = check_structure(net);
  if (!report.ok()) {
    std::string message = "net cannot be diagnosed:";
    for (const auto& f : report.findings) message += " " + f + ";";
    message.pop_back();
    throw Error(ErrorCode::kConfiguration, message);
  }
}

std::string format_marking(const NetSystem& net, const Marking& m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [p, n] : m.counts()) {
    os << (first ? "" : ", ") << net.name(p) << ':' << n;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string format_sequence(const NetSystem& net, const FiringSequence& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + net.name(s[i]);
  return out + "]";
}

}  // namespace pndiag
