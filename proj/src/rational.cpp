// Copyright 2026 The cyclebreak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cyclebreak/rational.hpp"

#include <cctype>
#include <charconv>

namespace cyclebreak {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

mpz_class parse_integer(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational {
    throw RationalParseError("malformed number: '" + original + "'");
  };

  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class d = parse_integer(den);
    if (d == 0) throw RationalParseError("zero denominator: '" + original + "'");
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) return fail();
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return fail();
  if (!int_part.empty() && !all_digits(int_part)) return fail();
  if (!frac_part.empty() && !all_digits(frac_part)) return fail();

  std::string digits(int_part);
  digits += frac_part;
  if (digits.empty()) return fail();
  exponent -= static_cast<long>(frac_part.size());

  mpz_class numerator = parse_integer(digits);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

}  // namespace cyclebreak
