#include "calculi_data.hpp"

namespace qcn::detail {

// Allen's interval algebra. Row = first operand, column = second operand,
// both in the canonical order P Pi E M Mi O Oi D Di S Si F Fi.
const BasicSpec kIntervalBasics[13] = {
    {"P", "Pi", "precede"},
    {"Pi", "P", "come after"},
    {"E", "E", "coincide with"},
    {"M", "Mi", "meet"},
    {"Mi", "M", "start right after"},
    {"O", "Oi", "overlap"},
    {"Oi", "O", "overlap the end of"},
    {"D", "Di", "occur during"},
    {"Di", "D", "contain"},
    {"S", "Si", "start"},
    {"Si", "S", "start together with and outlast"},
    {"F", "Fi", "finish"},
    {"Fi", "F", "finish together with and start before"},
};

const char* const kIntervalTable[13][13] = {
    {"P", "P Pi E M Mi O Oi D Di S Si F Fi", "P", "P", "P M O D S", "P", "P M O D S", "P M O D S", "P", "P", "P", "P M O D S", "P"},  // P
    {"P Pi E M Mi O Oi D Di S Si F Fi", "Pi", "Pi", "Pi Mi Oi D F", "Pi", "Pi Mi Oi D F", "Pi", "Pi Mi Oi D F", "Pi", "Pi Mi Oi D F", "Pi", "Pi", "Pi"},  // Pi
    {"P", "Pi", "E", "M", "Mi", "O", "Oi", "D", "Di", "S", "Si", "F", "Fi"},  // E
    {"P", "Pi Mi Oi Di Si", "M", "P", "E F Fi", "P", "O D S", "O D S", "P", "M", "M", "O D S", "P"},  // M
    {"P M O Di Fi", "Pi", "Mi", "E S Si", "Pi", "Oi D F", "Pi", "Oi D F", "Pi", "Oi D F", "Pi", "Mi", "Mi"},  // Mi
    {"P", "Pi Mi Oi Di Si", "O", "P", "Oi Di Si", "P M O", "E O Oi D Di S Si F Fi", "O D S", "P M O Di Fi", "O", "O Di Fi", "O D S", "P M O"},  // O
    {"P M O Di Fi", "Pi", "Oi", "O Di Fi", "Pi", "E O Oi D Di S Si F Fi", "Pi Mi Oi", "Oi D F", "Pi Mi Oi Di Si", "Oi D F", "Pi Mi Oi", "Oi", "Oi Di Si"},  // Oi
    {"P", "Pi", "D", "P", "Pi", "P M O D S", "Pi Mi Oi D F", "D", "P Pi E M Mi O Oi D Di S Si F Fi", "D", "Pi Mi Oi D F", "D", "P M O D S"},  // D
    {"P M O Di Fi", "Pi Mi Oi Di Si", "Di", "O Di Fi", "Oi Di Si", "O Di Fi", "Oi Di Si", "E O Oi D Di S Si F Fi", "Di", "O Di Fi", "Di", "Oi Di Si", "Di"},  // Di
    {"P", "Pi", "S", "P", "Mi", "P M O", "Oi D F", "D", "P M O Di Fi", "S", "E S Si", "D", "P M O"},  // S
    {"P M O Di Fi", "Pi", "Si", "O Di Fi", "Mi", "O Di Fi", "Oi", "Oi D F", "Di", "E S Si", "Si", "Oi", "Di"},  // Si
    {"P", "Pi", "F", "M", "Pi", "O D S", "Pi Mi Oi", "D", "Pi Mi Oi Di Si", "D", "Pi Mi Oi", "F", "E F Fi"},  // F
    {"P", "Pi Mi Oi Di Si", "Fi", "M", "Oi Di Si", "O", "Oi Di Si", "O D S", "Di", "O", "Di", "E F Fi", "Fi"},  // Fi
};

// RCC8, canonical order DC EC PO TPP NTPP TPPi NTPPi EQ.
const BasicSpec kRcc8Basics[8] = {
    {"DC", "DC", "stay disconnected from"},
    {"EC", "EC", "touch"},
    {"PO", "PO", "partially overlap"},
    {"TPP", "TPPi", "lie inside and touch the boundary of"},
    {"NTPP", "NTPPi", "lie strictly inside"},
    {"TPPi", "TPP", "contain and share a boundary point with"},
    {"NTPPi", "NTPP", "strictly contain"},
    {"EQ", "EQ", "coincide with"},
};

const char* const kRcc8Table[8][8] = {
    {"DC EC PO TPP NTPP TPPi NTPPi EQ", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP", "DC", "DC", "DC"},  // DC
    {"DC EC PO TPPi NTPPi", "DC EC PO TPP TPPi EQ", "DC EC PO TPP NTPP", "EC PO TPP NTPP", "PO TPP NTPP", "DC EC", "DC", "EC"},  // EC
    {"DC EC PO TPPi NTPPi", "DC EC PO TPPi NTPPi", "DC EC PO TPP NTPP TPPi NTPPi EQ", "PO TPP NTPP", "PO TPP NTPP", "DC EC PO TPPi NTPPi", "DC EC PO TPPi NTPPi", "PO"},  // PO
    {"DC", "DC EC", "DC EC PO TPP NTPP", "TPP NTPP", "NTPP", "DC EC PO TPP TPPi EQ", "DC EC PO TPPi NTPPi", "TPP"},  // TPP
    {"DC", "DC", "DC EC PO TPP NTPP", "NTPP", "NTPP", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP TPPi NTPPi EQ", "NTPP"},  // NTPP
    {"DC EC PO TPPi NTPPi", "EC PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPP TPPi EQ", "PO TPP NTPP", "TPPi NTPPi", "NTPPi", "TPPi"},  // TPPi
    {"DC EC PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPP NTPP TPPi NTPPi EQ", "NTPPi", "NTPPi", "NTPPi"},  // NTPPi
    {"DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ"},  // EQ
};

const BasicSpec kPointBasics[3] = {
    {"<", ">", "occur before"},
    {"=", "=", "occur at the same time as"},
    {">", "<", "occur after"},
};

const char* const kPointTable[3][3] = {
    {"<", "<", "< = >"},  // <
    {"<", "=", ">"},  // =
    {"< = >", ">", ">"},  // >
};

}  // namespace qcn::detail
