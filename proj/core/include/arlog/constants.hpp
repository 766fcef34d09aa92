#pragma once

#include <array>
#include <string_view>

#include "arlog/bigfloat.hpp"

namespace arlog {

enum class Constant { kPi, kGamma, kLn2, kZeta3 };

struct NamedConstant {
  Constant id;
  std::string_view name;
  // 60 significant digits, correctly rounded.
  std::string_view digits;
};

inline constexpr int kConstantDigits = 60;

inline constexpr std::array<NamedConstant, 4> kNamedConstants{{
    {Constant::kPi, "pi", "3.14159265358979323846264338327950288419716939937510582097494"},
    {Constant::kGamma, "gamma", "0.577215664901532860606512090082402431042159335939923598805767"},
    {Constant::kLn2, "ln2", "0.693147180559945309417232121458176568075500134360255254120680"},
    {Constant::kZeta3, "zeta3", "1.20205690315959428539973816151144999076498629234049888179227"},
}};

const NamedConstant& named_constant(Constant id);

// The constant rounded to `precision` digits. Beyond kConstantDigits the
// value carries only the 60 stored digits (zero-extended).
BigFloat constant(Constant id, int precision);

}  // namespace arlog
