#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fl0 {

struct RoleId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(RoleId, RoleId) = default;
};

struct NameId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(NameId, NameId) = default;
};

enum class NameKind : std::uint8_t {
  Constant,
  UserVariable,
  SystemVariable,
  DecompositionVariable,          // X^r, unique per (parent, role)
  ConstantDecompositionVariable,  // X_A, unique per (parent, constant)
};

constexpr bool is_variable_kind(NameKind k) { return k != NameKind::Constant; }

struct NameInfo {
  std::string text;
  NameKind kind = NameKind::Constant;
  NameId parent{};    // decomposition kinds
  RoleId role{};      // DecompositionVariable
  NameId constant{};  // ConstantDecompositionVariable
};

/// Symbol table for role and concept names.
///
/// Names are interned once and never removed, so ids stay valid for the
/// lifetime of the table and of any copy of it. Copies are how per-constant
/// stages get private room for the variables they introduce.
class Signature {
 public:
  /// Variable marker for user names; exact, case-sensitive suffix match.
  static constexpr std::string_view kVariableSuffix = "_var";

  static bool has_variable_suffix(std::string_view text);

  RoleId intern_role(std::string_view text);
  std::optional<RoleId> find_role(std::string_view text) const;

  /// Interns a constant or user variable, classified lexically by the suffix.
  NameId intern_name(std::string_view text);
  /// Interns with an explicit kind. Throws std::invalid_argument if the name
  /// already exists with a different kind.
  NameId intern_name(std::string_view text, NameKind kind);
  std::optional<NameId> find_name(std::string_view text) const;

  /// Fresh `VarN` system variable, skipping numbers already taken.
  NameId fresh_system_variable();

  /// The decomposition variable X^r, created on first request.
  NameId decomposition(NameId parent, RoleId role);
  std::optional<NameId> find_decomposition(NameId parent, RoleId role) const;

  /// The constant decomposition variable X_A, created on first request.
  NameId constant_decomposition(NameId parent, NameId constant);
  std::optional<NameId> find_constant_decomposition(NameId parent, NameId constant) const;

  const NameInfo& info(NameId id) const { return names_.at(id.value); }
  std::string_view name(NameId id) const { return names_.at(id.value).text; }
  NameKind kind(NameId id) const { return names_.at(id.value).kind; }
  bool is_variable(NameId id) const { return is_variable_kind(kind(id)); }
  bool is_constant(NameId id) const { return kind(id) == NameKind::Constant; }
  std::string_view role_name(RoleId id) const { return roles_.at(id.value); }

  std::size_t role_count() const { return roles_.size(); }
  std::size_t name_count() const { return names_.size(); }

  /// All roles in interning order.
  std::vector<RoleId> roles() const;
  /// All names in interning order.
  std::vector<NameId> names() const;
  /// Constants sorted lexicographically by text.
  std::vector<NameId> constants() const;

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  NameId add_name(NameInfo info);
  std::string unique_text(std::string base) const;

  std::vector<std::string> roles_;
  std::unordered_map<std::string, RoleId> role_index_;
  std::vector<NameInfo> names_;
  std::unordered_map<std::string, NameId> name_index_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, NameId> decompositions_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, NameId> constant_decompositions_;
  std::uint32_t next_system_ = 0;
};

}  // namespace fl0

template <>
struct std::hash<fl0::NameId> {
  std::size_t operator()(fl0::NameId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

template <>
struct std::hash<fl0::RoleId> {
  std::size_t operator()(fl0::RoleId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
