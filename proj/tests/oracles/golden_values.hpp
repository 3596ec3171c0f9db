#pragma once

// Generated by tests/oracles/golden.py (mpmath, 60 digits). Do not edit.

namespace golden {

inline constexpr double kQ_0 = 0.5;
inline constexpr double kQ_1 = 0.15865525393145705141;
inline constexpr double kQ_3 = 1.3498980316300945267e-3;
inline constexpr double kQ_m2 = 0.9772498680518207928;
inline constexpr double kQ_10 = 7.619853024160526066e-24;
inline constexpr double kQ_37 = 5.7255712225245768227e-300;
inline constexpr double kQinv_0_5 = 0.0;
inline constexpr double kQinv_1em1 = 1.281551565544600467;
inline constexpr double kQinv_1em3 = 3.0902323061678135415;
inline constexpr double kQinv_1em9 = 5.9978070150076868716;
inline constexpr double kQinv_1em200 = 30.205594179579643063;
inline constexpr double kQinv_0_999 = -3.0902323061678135415;

inline constexpr double kCapBits_10 = 3.4594316186372972562;
inline constexpr double kDispBits_10 = 2.0641675844683713698;
inline constexpr double kCapNats_10 = 2.3978952727983705441;
inline constexpr double kDispNats_10 = 0.99173553719008264463;
inline constexpr double kCapBits_1 = 1.0;
inline constexpr double kDispBits_1 = 1.5610267357542058484;
inline constexpr double kCapNats_1 = 0.69314718055994530942;
inline constexpr double kDispNats_1 = 0.75;
inline constexpr double kCapBits_10_11 = 0.9328858041414630327;
inline constexpr double kDispBits_10_11 = 1.5102904170562233454;
inline constexpr double kCapNats_10_11 = 0.64662716492505245244;
inline constexpr double kDispNats_10_11 = 0.7256235827664399093;

inline constexpr double kAwgnNomaUser1Log10 = -320.14474515720660493;
inline constexpr double kAwgnNomaUser2 = 0.88898546198065442388;
inline constexpr double kAwgnOmaUser1 = 4.9923430217230471804e-208;
inline constexpr double kAwgnOmaUser2 = 1.0;
inline constexpr double kAwgnOmaUser2Log10Complement = -26.400382011938890322;
inline constexpr double kAwgnNomaUser2HalfLog = 0.85497614205472159641;
inline constexpr double kRate400At1em3 = 3.2374415172182232146;

inline constexpr double kLinNomaUser1Theta = 0.17182818284590452354;
inline constexpr double kLinNomaUser1B = 88.464016060109336362;
inline constexpr double kLinNomaUser1Sigma = 0.15766068070058137769;
inline constexpr double kLinNomaUser1Delta = 0.18599568499122766938;
inline constexpr double kSurrogateNomaUser1 = 0.15784797606897812588;
inline constexpr double kExactNomaUser1 = 0.15808215356821517432;
inline constexpr double kLinOmaUser1Theta = 0.24903429574618413761;
inline constexpr double kLinOmaUser1B = 59.808190019044051785;
inline constexpr double kLinOmaUser1Sigma = 0.22807873536362747649;
inline constexpr double kLinOmaUser1Delta = 0.26998985612874079873;
inline constexpr double kSurrogateOmaUser1 = 0.22038970626276203013;
inline constexpr double kExactOmaUser1 = 0.22070566565150323973;
inline constexpr double kExactOmaUser2 = 0.99999902270610166466;
inline constexpr double kLinNomaUser2Theta = 1.7182818284590452354;
inline constexpr double kLinNomaUser2B = 8.8464016060109336362;
inline constexpr double kSurrogateNomaUser2 = 0.63178690930543892825;
inline constexpr double kExactNomaUser2InterferenceLimited = 0.63190277778347730764;
inline constexpr double kExactNomaUser2FullNoise = 0.68994692997650910082;

inline constexpr double kArqUsesExpected_M1_D0 = 500.0;
inline constexpr double kArqUsesLiteral_M1_D0 = 500.0;
inline constexpr double kArqThroughputLiteral_M1_D0 = 0.8;
inline constexpr double kArqUsesExpected_M1_D10 = 500.0;
inline constexpr double kArqUsesLiteral_M1_D10 = 500.0;
inline constexpr double kArqThroughputLiteral_M1_D10 = 0.8;
inline constexpr double kArqUsesExpected_M2_D0 = 600.0;
inline constexpr double kArqUsesLiteral_M2_D0 = 1.2e+3;
inline constexpr double kArqThroughputLiteral_M2_D0 = 0.4;
inline constexpr double kArqUsesExpected_M2_D10 = 610.0;
inline constexpr double kArqUsesLiteral_M2_D10 = 1.21e+3;
inline constexpr double kArqThroughputLiteral_M2_D10 = 0.39669421487603305785;
inline constexpr double kArqUsesExpected_M3_D0 = 620.0;
inline constexpr double kArqUsesLiteral_M3_D0 = 1.86e+3;
inline constexpr double kArqThroughputLiteral_M3_D0 = 0.26666666666666666667;
inline constexpr double kArqUsesExpected_M3_D10 = 632.0;
inline constexpr double kArqUsesLiteral_M3_D10 = 1.884e+3;
inline constexpr double kArqThroughputLiteral_M3_D10 = 0.26326963906581740977;

inline constexpr unsigned long long kSplitMix64Seed0[] = {0xE220A8397B1DCDAFull, 0x6E789E6AA1B965F4ull, 0x06C45D188009454Full};
inline constexpr unsigned long long kXoshiroKey0[] = {0x99EC5F36CB75F2B4ull, 0xBF6E1F784956452Aull, 0x1A5F849D4933E6E0ull, 0x6AA594F1262D2D2Cull};
inline constexpr unsigned long long kXoshiroKey123456789ABCDEF[] = {0xA2C2A42038D4EC3Dull, 0x05FC25D0738E7B0Full, 0x625E7BFF938E701Eull, 0x1BA4DDC6FE2B5726ull};

} // namespace golden
