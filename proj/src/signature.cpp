#include "fl0/signature.hpp"

#include <algorithm>
#include <stdexcept>

namespace fl0 {

bool Signature::has_variable_suffix(std::string_view text) {
  return text.size() > kVariableSuffix.size() && text.ends_with(kVariableSuffix);
}

RoleId Signature::intern_role(std::string_view text) {
  if (auto found = find_role(text)) return *found;
  RoleId id{static_cast<std::uint32_t>(roles_.size())};
  roles_.emplace_back(text);
  role_index_.emplace(std::string(text), id);
  return id;
}

std::optional<RoleId> Signature::find_role(std::string_view text) const {
  auto it = role_index_.find(std::string(text));
  if (it == role_index_.end()) return std::nullopt;
  return it->second;
}

NameId Signature::intern_name(std::string_view text) {
  return intern_name(text, has_variable_suffix(text) ? NameKind::UserVariable : NameKind::Constant);
}

NameId Signature::intern_name(std::string_view text, NameKind kind) {
  if (auto found = find_name(text)) {
    if (this->kind(*found) != kind) {
      throw std::invalid_argument("name '" + std::string(text) + "' already interned with a different kind");
    }
    return *found;
  }
  NameInfo info;
  info.text = std::string(text);
  info.kind = kind;
  return add_name(std::move(info));
}

std::optional<NameId> Signature::find_name(std::string_view text) const {
  auto it = name_index_.find(std::string(text));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

NameId Signature::add_name(NameInfo info) {
  NameId id{static_cast<std::uint32_t>(names_.size())};
  name_index_.emplace(info.text, id);
  names_.push_back(std::move(info));
  return id;
}

std::string Signature::unique_text(std::string base) const {
  if (!find_name(base)) return base;
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!find_name(candidate)) return candidate;
  }
}

NameId Signature::fresh_system_variable() {
  std::string text;
  do {
    text = "Var" + std::to_string(next_system_++);
  } while (find_name(text));
  NameInfo info;
  info.text = std::move(text);
  info.kind = NameKind::SystemVariable;
  return add_name(std::move(info));
}

NameId Signature::decomposition(NameId parent, RoleId role) {
  auto key = std::pair{parent.value, role.value};
  if (auto it = decompositions_.find(key); it != decompositions_.end()) return it->second;
  NameInfo info;
  info.text = unique_text(std::string(name(parent)) + "__d_" + std::string(role_name(role)));
  info.kind = NameKind::DecompositionVariable;
  info.parent = parent;
  info.role = role;
  NameId id = add_name(std::move(info));
  decompositions_.emplace(key, id);
  return id;
}

std::optional<NameId> Signature::find_decomposition(NameId parent, RoleId role) const {
  auto it = decompositions_.find({parent.value, role.value});
  if (it == decompositions_.end()) return std::nullopt;
  return it->second;
}

NameId Signature::constant_decomposition(NameId parent, NameId constant) {
  auto key = std::pair{parent.value, constant.value};
  if (auto it = constant_decompositions_.find(key); it != constant_decompositions_.end()) return it->second;
  NameInfo info;
  info.text = unique_text(std::string(name(parent)) + "__c_" + std::string(name(constant)));
  info.kind = NameKind::ConstantDecompositionVariable;
  info.parent = parent;
  info.constant = constant;
  NameId id = add_name(std::move(info));
  constant_decompositions_.emplace(key, id);
  return id;
}

std::optional<NameId> Signature::find_constant_decomposition(NameId parent, NameId constant) const {
  auto it = constant_decompositions_.find({parent.value, constant.value});
  if (it == constant_decompositions_.end()) return std::nullopt;
  return it->second;
}

std::vector<RoleId> Signature::roles() const {
  std::vector<RoleId> out;
  out.reserve(roles_.size());
  for (std::uint32_t i = 0; i < roles_.size(); ++i) out.push_back(RoleId{i});
  return out;
}

std::vector<NameId> Signature::names() const {
  std::vector<NameId> out;
  out.reserve(names_.size());
  for (std::uint32_t i = 0; i < names_.size(); ++i) out.push_back(NameId{i});
  return out;
}

std::vector<NameId> Signature::constants() const {
  std::vector<NameId> out;
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (names_[i].kind == NameKind::Constant) out.push_back(NameId{i});
  }
  std::sort(out.begin(), out.end(), [this](NameId a, NameId b) { return name(a) < name(b); });
  return out;
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.roles_ != b.roles_ || a.names_.size() != b.names_.size()) return false;
  for (std::size_t i = 0; i < a.names_.size(); ++i) {
    if (a.names_[i].text != b.names_[i].text || a.names_[i].kind != b.names_[i].kind) return false;
  }
  return true;
}

}  // namespace fl0
