#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "llrel/mult.hpp"

namespace llrel {

enum class ObjKind { Base, Unit, Top, Tensor, With, Lolli, Bang, Box };

struct ObjectNode;

/// Immutable object descriptor. Cheap to copy; compared structurally.
///
/// `Lolli` is the internal hom. Its carrier is the same as `Tensor`, but it is
/// kept distinct so that relation types print the way they were written.
class Object {
 public:
  Object() = default;

  static Object base(std::string name, std::vector<std::string> elements);
  static Object unit();
  static Object top();
  static Object tensor(Object a, Object b);
  static Object with(Object a, Object b);
  static Object lolli(Object a, Object b);
  static Object bang(Object a);
  static Object box(Object a, int colours);

  ObjKind kind() const;
  const std::string& name() const;
  const std::vector<std::string>& elements() const;
  const Object& left() const;
  const Object& right() const;
  const Object& inner() const { return left(); }
  int colours() const;

  bool valid() const { return node_ != nullptr; }

  /// Index of `element` in a Base object, or -1.
  int element_index(const std::string& element) const;

  /// Bang nesting depth, used to reject unbounded point universes.
  int bang_depth() const;

  std::string str() const;

  friend bool operator==(const Object& a, const Object& b);

 private:
  explicit Object(std::shared_ptr<const ObjectNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ObjectNode> node_;
};

struct ObjectNode {
  ObjKind kind;
  std::string name;
  std::vector<std::string> elements;
  Object left, right;
  int colours = 0;
};

inline Object Object::base(std::string name, std::vector<std::string> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (elements[i] == elements[j])
        throw TypeError("duplicate element '" + elements[i] + "' in object " + name);
  return Object(std::make_shared<ObjectNode>(
      ObjectNode{ObjKind::Base, std::move(name), std::move(elements), {}, {}, 0}));
}
inline Object Object::unit() {
  static const Object u(std::make_shared<ObjectNode>(ObjectNode{ObjKind::Unit, "1", {}, {}, {}, 0}));
  return u;
}
inline Object Object::top() {
  static const Object t(std::make_shared<ObjectNode>(ObjectNode{ObjKind::Top, "T", {}, {}, {}, 0}));
  return t;
}
inline Object Object::tensor(Object a, Object b) {
  return Object(std::make_shared<ObjectNode>(ObjectNode{ObjKind::Tensor, "", {}, std::move(a), std::move(b), 0}));
}
inline Object Object::with(Object a, Object b) {
  return Object(std::make_shared<ObjectNode>(ObjectNode{ObjKind::With, "", {}, std::move(a), std::move(b), 0}));
}
inline Object Object::lolli(Object a, Object b) {
  return Object(std::make_shared<ObjectNode>(ObjectNode{ObjKind::Lolli, "", {}, std::move(a), std::move(b), 0}));
}
inline Object Object::bang(Object a) {
  return Object(std::make_shared<ObjectNode>(ObjectNode{ObjKind::Bang, "", {}, std::move(a), {}, 0}));
}
inline Object Object::box(Object a, int colours) {
  if (colours < 1) throw TypeError("colour count must be at least 1");
  return Object(std::make_shared<ObjectNode>(ObjectNode{ObjKind::Box, "", {}, std::move(a), {}, colours}));
}

inline ObjKind Object::kind() const { return node_->kind; }
inline const std::string& Object::name() const { return node_->name; }
inline const std::vector<std::string>& Object::elements() const { return node_->elements; }
inline const Object& Object::left() const { return node_->left; }
inline const Object& Object::right() const { return node_->right; }
inline int Object::colours() const { return node_->colours; }

inline int Object::element_index(const std::string& element) const {
  if (kind() != ObjKind::Base) return -1;
  for (std::size_t i = 0; i < node_->elements.size(); ++i)
    if (node_->elements[i] == element) return static_cast<int>(i);
  return -1;
}

inline int Object::bang_depth() const {
  switch (kind()) {
    case ObjKind::Base:
    case ObjKind::Unit:
    case ObjKind::Top: return 0;
    case ObjKind::Bang: return 1 + left().bang_depth();
    case ObjKind::Box: return left().bang_depth();
    default: return std::max(left().bang_depth(), right().bang_depth());
  }
}

inline bool operator==(const Object& a, const Object& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ObjKind::Base: return a.name() == b.name() && a.elements() == b.elements();
    case ObjKind::Unit:
    case ObjKind::Top: return true;
    case ObjKind::Bang: return a.left() == b.left();
    case ObjKind::Box: return a.colours() == b.colours() && a.left() == b.left();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

namespace detail {
inline int obj_prec(ObjKind k) {
  switch (k) {
    case ObjKind::Lolli: return 1;
    case ObjKind::Tensor: return 2;
    case ObjKind::With: return 3;
    default: return 4;
  }
}
inline std::string obj_str(const Object& o, int ctx) {
  std::string s;
  int p = obj_prec(o.kind());
  switch (o.kind()) {
    case ObjKind::Base: s = o.name(); break;
    case ObjKind::Unit: s = "1"; break;
    case ObjKind::Top: s = "T"; break;
    case ObjKind::Bang: s = "!" + obj_str(o.left(), 4); break;
    case ObjKind::Box: s = "<>" + obj_str(o.left(), 4); break;
    // Lolli is right associative; tensor and with are left associative.
    case ObjKind::Lolli: s = obj_str(o.left(), p + 1) + " -o " + obj_str(o.right(), p); break;
    case ObjKind::Tensor: s = obj_str(o.left(), p) + " * " + obj_str(o.right(), p + 1); break;
    case ObjKind::With: s = obj_str(o.left(), p) + " & " + obj_str(o.right(), p + 1); break;
  }
  return p < ctx ? "(" + s + ")" : s;
}
}  // namespace detail

inline std::string Object::str() const { return detail::obj_str(*this, 0); }

}  // namespace llrel
