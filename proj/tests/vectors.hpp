// Generated by tests/oracle/gen_vectors.py; do not edit.
#pragma once
#include <string_view>

namespace vectors {

inline constexpr std::string_view kH1Empty =
    "8ac3f33c1c05efa720a3c12455b2afb454a7c82424b3f30599095eaa0ca1bcd5";
inline constexpr std::string_view kH1Abc =
    "a62e0b62a04cbc75a5bf73d309e5a57b15a1e61e8dbaf0a76b846b4430492c1c";
inline constexpr std::string_view kH1TwoParts =
    "60d2714425a80df8be0836477fb7c6ebc5c701c874da231afe5e8a42163f17b5";
inline constexpr std::string_view kH2Empty =
    "2cd5417132f8ecfecea910b461181651f45b6b9661fedb015d898b3ac40e5de8";
inline constexpr std::string_view kH2Abc =
    "14e6a28db9704615b63b35b63d7fd07ae4ef05d5c797d4c5512ec1be8df3c1fb";
inline constexpr std::string_view kG1Generator =
    "0000000000000000000000000000000000000000000000000000000000000001";
inline constexpr std::string_view kG1Times7 =
    "17072b2ed3bb8d759a5325f477629386cb6fc6ecb801bd76983a6b86abffe078";
inline constexpr std::string_view kG1TimesMinus7 =
    "57072b2ed3bb8d759a5325f477629386cb6fc6ecb801bd76983a6b86abffe078";
inline constexpr std::string_view kG2Generator =
    "198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c21800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed";
inline constexpr std::string_view kG2Times11 =
    "628b515a17f28b89920873207477f8c7fc05582debaf3184febf1cfdedc5ce8812bb1156a9f6b360fcb2614e15d8a3ff07f2c699dc69ca830b20d2df91fe9cd3";
inline constexpr std::string_view kG2TimesMinus11 =
    "228b515a17f28b89920873207477f8c7fc05582debaf3184febf1cfdedc5ce8812bb1156a9f6b360fcb2614e15d8a3ff07f2c699dc69ca830b20d2df91fe9cd3";
inline constexpr std::string_view kPairingGenerators =
    "12c70e90e12b7874510cd1707e8856f71bf7f61d72631e268fca81000db9a1f5084f330485b09e866bc2f2ea2b897394deaf3f12aa31f28cb0552990967d47040e841c2ac18a4003ac9326b9558380e0bc27fdd375e3605f96b819a358d34bde2067586885c3318eeffa1938c754fe3c60224ee5ae15e66af6b5104c47c8c5d801676555de427abc409c4a394bc5426886302996919d4bf4bdd02236e14b36362b03614464f04dd772d86df88674c270ffc8747ea13e72da95e3594468f222c42c53748bcd21a7c038fb30ddc8ac3bf0af25d7859cfbc12c30c866276c56590927ed208e7a0b55ae6e710bbfbd2fd922669c026360e37cc5b2ab8624115361041ad9db1937fd72f4ac462173d31d3d6117411fa48dba8d499d762b47edb3b54a279db296f9d479292532c7c493d8e0722b6efae42158387564889c79fc038ee30dc26f240656bbe2029bd441d77c221f0ba4c70c94b29b5f17f0f6d08745a069108c19d15f9446f744d0f110405d3856d6cc3bda6c4d537663729f5257628417";
inline constexpr std::string_view kPairing7x11 =
    "0efdfaadc5ae7b24317b8ca013bfbea368255493bc75a568a257bb64b77fc5ee16205fdfe21c0c62b927db1b658de3a41ac69b8440a583394b61ddc34c4f93e908fbb16b89f1d75bed43d02c9290a5bc67f92f9f4a4ae1a9315e17da0c54dd26043086f4ac650a865563fedda2441bd885126332203a434a7b75200526c7478d079731551c9a8b9de9c7041dd1646ad2f58159e62e7a026df69d281cdd2592262b81a6eb961a431b45e634e25064cb8de0958724dead9636dfd4e2723155d7fc1dc52febc68bfc5aaeb27c7f965e7bd193d359fb79d0c84384c52e58e309bf7f0ffdaae0742374e844139c1d1ee3c339ee5bf7dc776fdfdf6dd0cdedcc5021fc1e4007a5c1d54285054b48224456aa8b205b5e07a738f1de63d2cff08bc3c1112018bbcc5ec254314013efb3cc334b435d967e149c984ede804c6c92c1b5ede02d2a0451786a8237ab4422d340729f44f3d0591b136d42604ad8bbbdc02de2ff0c2f5063accda948ce97fa96508c77f89ce07c7ba4bd143de777a0eb19c8f0b3";
inline constexpr std::string_view kKeccakEmpty =
    "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470";
inline constexpr std::string_view kKeccakLong =
    "96ea54061def936c4be90b518992fdc6f12f535068a256229aca54267b4d084d";
inline constexpr std::string_view kAddressSk1 =
    "0x7E5F4552091A69125d5DfCb7b8C2659029395Bdf";
inline constexpr std::string_view kAddressSkC0ffee =
    "0xF5A5E415061470A8b9137959180901aEa72450a4";
inline constexpr std::string_view kWalletSk =
    "4c0883a69102937d6231471b5dbb6204fe5129617082792ae468d01a3f362318";
inline constexpr std::string_view kWalletAddress =
    "0x2c7536E3605D9C16a7a3D7b1898e529396a65c23";
inline constexpr std::string_view kWalletSigHello =
    "1349030c04e4d8c3820280c1d1535bff8cf1844fc3dca3951c90e764a5e4c8ae3e718f5d632a200bf6d196613f360e1e3ef975a4283380fe888d2a0f409fee9d00";
inline constexpr std::string_view kWalletSigEmpty =
    "8aeffbfd072adec5a47c2cf0c65ea6360a8be719e48cf851ac667879c712b38276e45dc7c134e82237f1c910c73641383c77a2501751c92cb72247e09516166000";
inline constexpr std::string_view kSkOneSigAbc =
    "e6cbd687d6cda3d7cf8e37214d3128a54196b42400aa1c246952a683462388561eee2ec3d64cb26e0edd6f86b19784552a39a351ea1779cdad6717e82009324201";

}  // namespace vectors
