#pragma once

namespace qcn::detail {

struct BasicSpec {
  const char* symbol;
  const char* inverse;
  const char* phrase;
};

// Each table cell is a space-separated list of basic-relation symbols.
extern const BasicSpec kIntervalBasics[13];
extern const char* const kIntervalTable[13][13];
extern const BasicSpec kRcc8Basics[8];
extern const char* const kRcc8Table[8][8];
extern const BasicSpec kPointBasics[3];
extern const char* const kPointTable[3][3];

}  // namespace qcn::detail
