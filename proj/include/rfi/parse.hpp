#pragma once
#include <string>

#include "rfi/polyforms.hpp"

namespace rfi {

// Expressions use +, -, *, /, ^ and parentheses; * may be omitted between
// factors. X, Y, Z are the coordinates and a is the field generator.
Form parse_form(const std::string& text, const NumberField* field, int line = 0);
FieldElement parse_field_element(const std::string& text, const NumberField* field, int line = 0);
// "t^2+t+1"
const NumberField* parse_field(const std::string& text, int line = 0);

struct FoliationInput {
    const NumberField* field = nullptr;
    OneForm omega;
};

FoliationInput parse_foliation(const std::string& text);
FoliationInput read_foliation(const std::string& path);
std::string format_foliation(const OneForm& omega);

std::string read_text_file(const std::string& path);

} // namespace rfi
