#pragma once

#include <string>

#include "nmland/model.hpp"
#include "nmland/nk.hpp"
#include "nmland/walsh.hpp"

namespace nmland {

// Landscape documents are JSON text. Numeric fields are written with 17
// significant digits so a load/store round trip is lossless.
std::string to_document(const InteractionModel& m);
InteractionModel model_from_document(const std::string& text);

std::string to_document(const WalshPolynomial& w);
WalshPolynomial walsh_from_document(const std::string& text);

std::string to_document(const NKLandscape& nk);
NKLandscape nk_from_document(const std::string& text);

// 17-significant-digit representation, shortest form (%.17g).
std::string format_double(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace nmland
