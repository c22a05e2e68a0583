#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ssnmf {

/// Error function applied to one term of the objective.
enum class ErrorKind { frobenius, divergence };

/// Which error function penalizes reconstruction (X ≈ AS) and which penalizes
/// supervision (Y ≈ BS).
struct ModelVariant {
  ErrorKind reconstruction = ErrorKind::frobenius;
  ErrorKind supervision = ErrorKind::frobenius;

  friend constexpr bool operator==(ModelVariant, ModelVariant) = default;

  /// Short code: "FF", "FD", "DF" or "DD".
  std::string code() const;
  /// Long name, e.g. "(Fro, Div)".
  std::string name() const;
  /// 1-based objective index: FF -> 1, FD -> 2, DF -> 3, DD -> 4.
  int objective_index() const noexcept;

  /// Accepts "FF"/"fd"/... codes and the 1..4 objective indices.
  static std::optional<ModelVariant> parse(std::string_view text);
};

inline constexpr ModelVariant kFroFro{ErrorKind::frobenius, ErrorKind::frobenius};
inline constexpr ModelVariant kFroDiv{ErrorKind::frobenius, ErrorKind::divergence};
inline constexpr ModelVariant kDivFro{ErrorKind::divergence, ErrorKind::frobenius};
inline constexpr ModelVariant kDivDiv{ErrorKind::divergence, ErrorKind::divergence};

/// In objective order F1..F4.
inline constexpr std::array<ModelVariant, 4> kAllVariants{kFroFro, kFroDiv, kDivFro,
                                                          kDivDiv};

} // namespace ssnmf
