// Bracketed compositional labeling language: parse, validate, serialize,
// flatten to belief frames, and extract object mentions.
//
//   Utterance := Segment+
//   Segment   := '[' IntentLabel ' ' Content ']'
//   Content   := (Token | Slot)+
//   Slot      := '[' SlotLabel ' ' Content ']'
//   SlotLabel := Prefix? '.' Attr (':' EnumOrIndex)?
//
// Tokens are whitespace-delimited; literal brackets are escaped \[ \].
#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <simmc/ontology.hpp>

namespace simmc::label {

using ontology::Domain;
using ontology::OntologyGraph;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t offset)
      : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  size_t offset;
};

struct IntentLabel {
  std::string dialog_act;
  std::string activity;
  std::string object;
  std::optional<std::string> attribute;

  bool operator==(const IntentLabel&) const = default;

  std::string str() const {
    std::string s = "DA:" + dialog_act + ":" + activity + ":" + object;
    if (attribute) s += "." + *attribute;
    return s;
  }
};

enum class PrefixKind { Bare, Activity, Object, Info, RefIndex, NamedObject };

struct SlotLabel {
  PrefixKind prefix = PrefixKind::Bare;
  int ref_index = 0;                       // R<k>, or the <k>: of "2:USER"
  std::optional<std::string> object_name;  // NamedObject prefix
  std::string attribute;
  std::optional<std::string> enum_value;    // ":VALUE" on an enum attribute
  std::optional<std::string> index_binding; // ":DRESS_1" style suffix

  bool operator==(const SlotLabel&) const = default;

  std::string prefix_str() const {
    switch (prefix) {
      case PrefixKind::Bare: return "";
      case PrefixKind::Activity: return "A";
      case PrefixKind::Object: return "O";
      case PrefixKind::Info: return "INFO";
      case PrefixKind::RefIndex: return "R" + std::to_string(ref_index);
      case PrefixKind::NamedObject:
        return (ref_index > 0 ? std::to_string(ref_index) + ":" : "") +
               *object_name;
    }
    return "";
  }
  std::string str() const {
    std::string s = prefix_str() + "." + attribute;
    if (enum_value) s += ":" + *enum_value;
    if (index_binding) s += ":" + *index_binding;
    return s;
  }
};

struct ParseNode {
  bool is_intent = false;
  IntentLabel intent;
  SlotLabel slot;
  int token_begin = 0;  // surface-token range, over the whole utterance
  int token_end = 0;
  size_t label_offset = 0;  // byte offset of the label in the source text
  std::vector<ParseNode> children;
};

struct Token {
  std::string text;
  size_t raw_begin = 0;  // char offsets into raw_text
  size_t raw_end = 0;
};

struct CorefLink {
  std::vector<int> mention_path;  // segment index, then child indices
  std::string item_id;
};

struct AnnotatedUtterance {
  std::string raw_text;
  std::vector<Token> tokens;
  std::vector<ParseNode> segments;
  std::vector<CorefLink> coref_links;

  std::string span_text(const ParseNode& n) const {
    if (n.token_begin >= n.token_end) return "";
    return raw_text.substr(tokens[n.token_begin].raw_begin,
                           tokens[n.token_end - 1].raw_end -
                               tokens[n.token_begin].raw_begin);
  }
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::vector<int> path;
  std::string message;
  size_t offset = 0;
};

struct BeliefSlot {
  int intent_index = 0;
  std::string name;
  std::string value;
  bool operator==(const BeliefSlot&) const = default;
};

struct BeliefCoref {
  int intent_index = 0;
  std::string object_type;
  std::string item_id;
  bool operator==(const BeliefCoref&) const = default;
};

struct BeliefFrame {
  std::vector<IntentLabel> intents;
  std::vector<BeliefSlot> slots;
  std::vector<BeliefCoref> coref;
};

struct Mention {
  std::vector<int> path;
  std::string object_type;
};

// ---------------------------------------------------------------------------
// Lexing

namespace detail {

enum class LexKind { Open, Close, Word };

struct Lexeme {
  LexKind kind;
  std::string text;
  size_t offset;
};

inline std::vector<Lexeme> lex(const std::string& text) {
  std::vector<Lexeme> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '[') {
      out.push_back({LexKind::Open, "[", i++});
      continue;
    }
    if (c == ']') {
      out.push_back({LexKind::Close, "]", i++});
      continue;
    }
    size_t start = i;
    std::string word;
    while (i < text.size()) {
      c = text[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']')
        break;
      if (c == '\\' && i + 1 < text.size() &&
          (text[i + 1] == '[' || text[i + 1] == ']')) {
        word += text[i + 1];
        i += 2;
        continue;
      }
      word += c;
      ++i;
    }
    out.push_back({LexKind::Word, word, start});
  }
  return out;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// OBJNAME_<k>
inline bool is_index_binding(const std::string& s) {
  auto pos = s.rfind('_');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= s.size()) return false;
  for (size_t i = pos + 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return is_identifier(s.substr(0, pos));
}

inline SlotLabel parse_slot_label(const std::string& text, size_t offset) {
  SlotLabel label;
  std::string head = text;
  // optional ":VALUE" suffix after the attribute
  auto dot = head.find('.');
  if (dot == std::string::npos)
    throw ParseError("slot label lacks '.': " + text, offset);
  std::string prefix = head.substr(0, dot);
  std::string rest = head.substr(dot + 1);
  auto colon = rest.find(':');
  if (colon != std::string::npos) {
    std::string suffix = rest.substr(colon + 1);
    rest = rest.substr(0, colon);
    if (suffix.empty())
      throw ParseError("empty suffix on slot label: " + text, offset);
    if (is_index_binding(suffix))
      label.index_binding = suffix;
    else
      label.enum_value = suffix;
  }
  label.attribute = rest;
  if (!is_identifier(label.attribute))
    throw ParseError("bad slot attribute: " + text, offset);

  if (prefix.empty()) {
    label.prefix = PrefixKind::Bare;
  } else if (prefix == "A") {
    label.prefix = PrefixKind::Activity;
  } else if (prefix == "O") {
    label.prefix = PrefixKind::Object;
  } else if (prefix == "INFO") {
    label.prefix = PrefixKind::Info;
  } else if (prefix.size() > 1 && prefix[0] == 'R' &&
             std::all_of(prefix.begin() + 1, prefix.end(), [](char c) {
               return std::isdigit(static_cast<unsigned char>(c));
             })) {
    label.prefix = PrefixKind::RefIndex;
    label.ref_index = std::stoi(prefix.substr(1));
    if (label.ref_index < 1)
      throw ParseError("reference index must be >= 1: " + text, offset);
  } else {
    // "<k>:NAME" or plain "NAME"
    std::string name = prefix;
    auto pc = prefix.find(':');
    if (pc != std::string::npos) {
      std::string idx = prefix.substr(0, pc);
      name = prefix.substr(pc + 1);
      if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          }))
        throw ParseError("bad index prefix: " + text, offset);
      label.ref_index = std::stoi(idx);
    }
    if (!is_identifier(name))
      throw ParseError("bad slot prefix: " + text, offset);
    label.prefix = PrefixKind::NamedObject;
    label.object_name = name;
  }
  return label;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Syntax-only parse (no ontology checks); `parse` below adds validation.

inline AnnotatedUtterance parse_syntax(const std::string& text) {
  using detail::LexKind;
  auto lex = detail::lex(text);
  AnnotatedUtterance u;
  size_t i = 0;

  // Parses the '[' at lex[i]; returns the node. Appends surface tokens to
  // u.tokens as it goes.
  auto parse_node = [&](auto&& self, bool top_level) -> ParseNode {
    size_t open_off = lex[i].offset;
    ++i;  // consume '['
    if (i >= lex.size() || lex[i].kind != LexKind::Word)
      throw ParseError("expected label after '['", open_off);
    ParseNode node;
    node.label_offset = lex[i].offset;
    std::string head = lex[i].text;
    ++i;
    bool is_intent = head.rfind("DA:", 0) == 0 || head.rfind("IN:", 0) == 0;
    if (top_level && !is_intent)
      throw ParseError("segment must start with a DA: or IN: intent label",
                       node.label_offset);
    if (is_intent) {
      node.is_intent = true;
      std::string body = head.substr(3);
      std::vector<std::string> parts;
      size_t pos = 0;
      while (true) {
        auto c = body.find(':', pos);
        parts.push_back(body.substr(pos, c - pos));
        if (c == std::string::npos) break;
        pos = c + 1;
      }
      if (parts.size() != 3)
        throw ParseError("intent label must be DA:DIALOG_ACT:ACTIVITY:OBJECT",
                         node.label_offset);
      node.intent.dialog_act = parts[0];
      node.intent.activity = parts[1];
      std::string obj = parts[2];
      // the object may be detached: "[DA:INFORM:GET: TABLE_LAMP ...]"
      if (obj.empty()) {
        if (i >= lex.size() || lex[i].kind != LexKind::Word)
          throw ParseError("intent label lacks an object", node.label_offset);
        obj = lex[i].text;
        ++i;
      }
      auto dot = obj.find('.');
      if (dot != std::string::npos) {
        node.intent.attribute = obj.substr(dot + 1);
        obj = obj.substr(0, dot);
      } else if (i < lex.size() && lex[i].kind == LexKind::Word &&
                 lex[i].text.size() > 1 && lex[i].text[0] == '.' &&
                 detail::is_identifier(lex[i].text.substr(1))) {
        // detached attribute: "[DA:ASK:GET:TABLE_LAMP .price What ...]"
        node.intent.attribute = lex[i].text.substr(1);
        ++i;
      }
      if (!detail::is_identifier(node.intent.dialog_act) ||
          !detail::is_identifier(node.intent.activity) ||
          !detail::is_identifier(obj) ||
          (node.intent.attribute &&
           !detail::is_identifier(*node.intent.attribute)))
        throw ParseError("malformed intent label: " + head, node.label_offset);
      node.intent.object = obj;
    } else {
      node.slot = detail::parse_slot_label(head, node.label_offset);
    }

    node.token_begin = static_cast<int>(u.tokens.size());
    while (i < lex.size() && lex[i].kind != LexKind::Close) {
      if (lex[i].kind == LexKind::Open) {
        node.children.push_back(self(self, false));
      } else {
        u.tokens.push_back({lex[i].text, 0, 0});
        ++i;
      }
    }
    if (i >= lex.size()) throw ParseError("unbalanced '['", open_off);
    ++i;  // consume ']'
    node.token_end = static_cast<int>(u.tokens.size());
    return node;
  };

  while (i < lex.size()) {
    if (lex[i].kind != LexKind::Open)
      throw ParseError("expected '[' to open a segment", lex[i].offset);
    u.segments.push_back(parse_node(parse_node, true));
  }

  // raw_text: surface tokens joined by single spaces
  std::string raw;
  for (auto& tok : u.tokens) {
    if (!raw.empty()) raw += ' ';
    tok.raw_begin = raw.size();
    raw += tok.text;
    tok.raw_end = raw.size();
  }
  u.raw_text = raw;
  return u;
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

// Chain a bare-prefixed slot resolves against, innermost first: the enclosing
// slot's range type (type-shifting nests like [O.brand [.name ...]]), then the
// intent object, then the intent activity.
inline void validate_node(const ParseNode& node, const IntentLabel& intent,
                          const ParseNode* parent_slot,
                          const OntologyGraph& g, std::vector<int>& path,
                          std::vector<Diagnostic>& diags) {
  using ontology::RangeKind;
  auto err = [&](const std::string& msg) {
    diags.push_back({Diagnostic::Severity::Error, path, msg, node.label_offset});
  };

  const ontology::AttributeDef* def = nullptr;
  const SlotLabel& s = node.slot;
  switch (s.prefix) {
    case PrefixKind::Activity:
      if (g.has_type(intent.activity))
        def = ontology::find_attribute(intent.activity, s.attribute, g);
      if (!def) err("A." + s.attribute + " does not resolve on activity " +
                    intent.activity);
      break;
    case PrefixKind::Object:
    case PrefixKind::RefIndex:
      if (g.has_type(intent.object))
        def = ontology::find_attribute(intent.object, s.attribute, g);
      if (!def) err(s.prefix_str() + "." + s.attribute +
                    " does not resolve on object " + intent.object);
      break;
    case PrefixKind::Info:
      if (!intent.attribute || *intent.attribute != "info")
        err("INFO prefix outside a .info intent");
      if (g.has_type(intent.object))
        def = ontology::find_attribute(intent.object, s.attribute, g);
      if (!def) err("INFO." + s.attribute + " does not resolve on object " +
                    intent.object);
      break;
    case PrefixKind::NamedObject:
      if (!g.has_type(*s.object_name) ||
          g.type(*s.object_name).kind != ontology::TypeKind::Object) {
        err("unknown object type in slot prefix: " + *s.object_name);
      } else {
        def = ontology::find_attribute(*s.object_name, s.attribute, g);
        if (!def) err(*s.object_name + "." + s.attribute + " does not resolve");
      }
      break;
    case PrefixKind::Bare: {
      if (parent_slot) {
        // resolve against the embedding slot's range type
        const SlotLabel& ps = parent_slot->slot;
        std::string parent_type;
        if (g.has_type(intent.object)) {
          const ontology::AttributeDef* pd = nullptr;
          if (ps.prefix == PrefixKind::Activity) {
            if (g.has_type(intent.activity))
              pd = ontology::find_attribute(intent.activity, ps.attribute, g);
          } else if (ps.prefix == PrefixKind::NamedObject) {
            if (g.has_type(*ps.object_name))
              pd = ontology::find_attribute(*ps.object_name, ps.attribute, g);
          } else {
            pd = ontology::find_attribute(intent.object, ps.attribute, g);
          }
          if (pd && pd->range_kind == RangeKind::Type) parent_type = pd->range;
        }
        if (!parent_type.empty())
          def = ontology::find_attribute(parent_type, s.attribute, g);
      }
      if (!def && g.has_type(intent.object))
        def = ontology::find_attribute(intent.object, s.attribute, g);
      if (!def && g.has_type(intent.activity))
        def = ontology::find_attribute(intent.activity, s.attribute, g);
      if (!def) err("." + s.attribute + " does not resolve in this context");
      break;
    }
  }

  if (def && s.enum_value) {
    if (def->range_kind != RangeKind::Enum)
      err("value suffix :" + *s.enum_value + " on non-enum attribute " +
          s.attribute);
    else if (!g.enums.at(def->range).contains(*s.enum_value))
      err("'" + *s.enum_value + "' is not a value of enum " + def->range);
  }
  if (s.index_binding) {
    auto pos = s.index_binding->rfind('_');
    std::string obj = s.index_binding->substr(0, pos);
    if (!g.has_type(obj) || g.type(obj).kind != ontology::TypeKind::Object)
      err("index binding references unknown object type: " + obj);
    else if (def && def->range_kind == RangeKind::Type &&
             !ontology::is_subtype(obj, def->range, g))
      err("index binding " + *s.index_binding + " is not a " + def->range);
  }

  for (int c = 0; c < static_cast<int>(node.children.size()); ++c) {
    path.push_back(c);
    validate_node(node.children[c], intent, &node, g, path, diags);
    path.pop_back();
  }
}

}  // namespace detail

inline std::vector<Diagnostic> validate(const AnnotatedUtterance& u,
                                        const OntologyGraph& g, Domain domain) {
  using ontology::TypeKind;
  std::vector<Diagnostic> diags;
  for (int si = 0; si < static_cast<int>(u.segments.size()); ++si) {
    const ParseNode& seg = u.segments[si];
    std::vector<int> path{si};
    auto err = [&](const std::string& msg) {
      diags.push_back(
          {Diagnostic::Severity::Error, path, msg, seg.label_offset});
    };
    const IntentLabel& in = seg.intent;
    bool heads_ok = true;
    auto check_kind = [&](const std::string& name, TypeKind k,
                          const char* what) {
      if (!g.has_type(name) || g.type(name).kind != k) {
        err(std::string("unknown ") + what + ": " + name);
        heads_ok = false;
      }
    };
    check_kind(in.dialog_act, TypeKind::DialogAct, "dialog act");
    check_kind(in.activity, TypeKind::Activity, "activity");
    check_kind(in.object, TypeKind::Object, "object type");
    if (heads_ok &&
        !ontology::validate_combo(in.dialog_act, in.activity, domain, g))
      err("invalid combination " + in.dialog_act + ":" + in.activity +
          " for domain " + ontology::to_string(domain));
    if (in.attribute && *in.attribute != "info" && heads_ok &&
        !ontology::find_attribute(in.object, *in.attribute, g) &&
        !ontology::find_attribute(in.activity, *in.attribute, g))
      err("intent attribute ." + *in.attribute + " does not resolve on " +
          in.object + " or " + in.activity);
    for (int c = 0; c < static_cast<int>(seg.children.size()); ++c) {
      path.push_back(c);
      detail::validate_node(seg.children[c], in, nullptr, g, path, diags);
      path.pop_back();
    }
  }
  return diags;
}

inline AnnotatedUtterance parse(const std::string& text,
                                const OntologyGraph& g, Domain domain) {
  AnnotatedUtterance u = parse_syntax(text);
  auto diags = validate(u, g, domain);
  if (!diags.empty()) throw ParseError(diags[0].message, diags[0].offset);
  return u;
}

// ---------------------------------------------------------------------------
// Canonical serialization

namespace detail {

inline std::string escape_token(const std::string& t) {
  std::string out;
  for (char c : t) {
    if (c == '[' || c == ']') out += '\\';
    out += c;
  }
  return out;
}

inline void serialize_node(const AnnotatedUtterance& u, const ParseNode& node,
                           std::string& out) {
  out += '[';
  out += node.is_intent ? node.intent.str() : node.slot.str();
  size_t child = 0;
  for (int t = node.token_begin; t < node.token_end;) {
    if (child < node.children.size() &&
        node.children[child].token_begin == t) {
      out += ' ';
      serialize_node(u, node.children[child], out);
      t = node.children[child].token_end;
      ++child;
    } else {
      out += ' ';
      out += escape_token(u.tokens[t].text);
      ++t;
    }
  }
  // children with empty spans that sit at the end
  for (; child < node.children.size(); ++child) {
    out += ' ';
    serialize_node(u, node.children[child], out);
  }
  out += ']';
}

}  // namespace detail

inline std::string serialize(const AnnotatedUtterance& u) {
  std::string out;
  for (const auto& seg : u.segments) {
    if (!out.empty()) out += ' ';
    detail::serialize_node(u, seg, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Belief frames and mentions

namespace detail {

inline void flatten_slots(const AnnotatedUtterance& u, const ParseNode& node,
                          int intent_index, const std::string& name_prefix,
                          BeliefFrame& frame) {
  std::string name =
      name_prefix.empty() ? node.slot.prefix_str() + "." + node.slot.attribute
                          : name_prefix + "." + node.slot.attribute;
  frame.slots.push_back({intent_index, name, u.span_text(node)});
  for (const auto& c : node.children) flatten_slots(u, c, intent_index, name, frame);
}

}  // namespace detail

inline BeliefFrame flatten(const AnnotatedUtterance& u) {
  BeliefFrame frame;
  for (int si = 0; si < static_cast<int>(u.segments.size()); ++si) {
    const ParseNode& seg = u.segments[si];
    frame.intents.push_back(seg.intent);
    for (const auto& c : seg.children)
      detail::flatten_slots(u, c, si, "", frame);
  }
  for (const auto& link : u.coref_links) {
    // mention path: segment index, then child indices
    const ParseNode* n = &u.segments[link.mention_path[0]];
    for (size_t d = 1; d < link.mention_path.size(); ++d)
      n = &n->children[link.mention_path[d]];
    std::string type = n->is_intent ? n->intent.object
                       : n->slot.index_binding
                           ? n->slot.index_binding->substr(
                                 0, n->slot.index_binding->rfind('_'))
                           : n->slot.object_name.value_or("");
    frame.coref.push_back({link.mention_path[0], type, link.item_id});
  }
  return frame;
}

inline std::vector<Mention> extract_mentions(const AnnotatedUtterance& u) {
  std::vector<Mention> out;
  auto walk = [&](auto&& self, const ParseNode& node,
                  std::vector<int>& path) -> void {
    if (node.is_intent) {
      out.push_back({path, node.intent.object});
    } else if (node.slot.index_binding) {
      out.push_back({path, node.slot.index_binding->substr(
                               0, node.slot.index_binding->rfind('_'))});
    } else if (node.slot.prefix == PrefixKind::NamedObject) {
      out.push_back({path, *node.slot.object_name});
    }
    for (int c = 0; c < static_cast<int>(node.children.size()); ++c) {
      path.push_back(c);
      self(self, node.children[c], path);
      path.pop_back();
    }
  };
  for (int si = 0; si < static_cast<int>(u.segments.size()); ++si) {
    std::vector<int> path{si};
    walk(walk, u.segments[si], path);
  }
  return out;
}

}  // namespace simmc::label
