#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pndiag/net.hpp"

namespace pndiag {

inline constexpr std::string_view kSchemaVersion = "1";

/// In-memory form of a `.net.json` file, before name resolution.
struct NetDocument {
  struct Place {
    std::string name;
    friend bool operator==(const Place&, const Place&) = default;
  };
  struct Transition {
    std::string name;
    std::vector<std::string> pre;
    std::vector<std::string> post;
    bool observable = false;
    bool fault = false;
    friend bool operator==(const Transition&, const Transition&) = default;
  };

  std::string schema_version{kSchemaVersion};
  std::vector<Place> places;
  std::vector<Transition> transitions;
  /// Document order is kept; counts are signed so negative input can be
  /// reported rather than wrapped.
  std::vector<std::pair<std::string, std::int64_t>> initial_marking;

  friend bool operator==(const NetDocument&, const NetDocument&) = default;
};

/// Syntax (SyntaxError with line/column) and shape (kSchema) checks only.
NetDocument parse_document(std::string_view text);
std::string serialize_document(const NetDocument& doc);

/// Name resolution and semantic checks; each failure has its own ErrorCode.
NetSystem to_net(const NetDocument& doc);
/// Canonical document: declared order, pre/post by place index, zero counts
/// omitted.
NetDocument to_document(const NetSystem& net);

struct ParsedNet {
  NetSystem net;
  StructureReport structure;
};

ParsedNet parse_net(std::string_view text);
std::string serialize_net(const NetSystem& net);

}  // namespace pndiag
