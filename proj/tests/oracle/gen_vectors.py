"""Independent reference values for the C++ test suite.

Uses py_ecc (BN254), hashlib, pycryptodome (Keccak) and coincurve
(libsecp256k1). Regenerate with:

    python3 tests/oracle/gen_vectors.py > tests/vectors.hpp
"""

import hashlib

import coincurve
from Crypto.Hash import keccak
from py_ecc import bn128
from py_ecc.fields import bn128_FQ as FQ

P = bn128.field_modulus
R = bn128.curve_order


def lp(b):
    return len(b).to_bytes(8, "big") + b


def h1(*parts):
    return hashlib.sha256(lp(b"NOMSIG-H1") + b"".join(lp(p) for p in parts)).digest()


def h2(*parts):
    d = hashlib.sha512(lp(b"NOMSIG-H2") + b"".join(lp(p) for p in parts)).digest()
    return int.from_bytes(d, "big") % R


def largest(v):
    return v > (P - 1) // 2


def enc_g1(pt):
    if pt is None:
        return bytes([0x80]) + bytes(31)
    x, y = int(pt[0]), int(pt[1])
    b = bytearray(x.to_bytes(32, "big"))
    if largest(y):
        b[0] |= 0x40
    return bytes(b)


def enc_g2(pt):
    if pt is None:
        return bytes([0x80]) + bytes(63)
    x, y = pt
    x0, x1 = (int(c) for c in x.coeffs)
    y0, y1 = (int(c) for c in y.coeffs)
    b = bytearray(x1.to_bytes(32, "big") + x0.to_bytes(32, "big"))
    if (largest(y1) if y1 != 0 else largest(y0)):
        b[0] |= 0x40
    return bytes(b)


def enc_gt(v):
    # py_ecc represents Fq12 as Fq[w]/(w^12 - 18 w^6 + 82) with i = w^6 - 9.
    # The tower basis is (1, v, v^2, w, vw, v^2 w) = w^(0, 2, 4, 1, 3, 5), each
    # with an Fq2 coefficient x + y i, so x = a_j + 9 a_{j+6} and y = a_{j+6}.
    a = [int(c) for c in v.coeffs]
    out = b""
    for j in (0, 2, 4, 1, 3, 5):
        y = a[j + 6] % P
        x = (a[j] + 9 * a[j + 6]) % P
        out += x.to_bytes(32, "big") + y.to_bytes(32, "big")
    return out


def keccak256(b):
    return keccak.new(digest_bits=256, data=b).digest()


def address(sk):
    pub = coincurve.PrivateKey(sk.to_bytes(32, "big")).public_key.format(compressed=False)[1:]
    return keccak256(pub)[12:]


def checksum(addr):
    h = keccak256(addr.hex().encode()).hex()
    return "0x" + "".join(c.upper() if c.isalpha() and int(h[i], 16) >= 8 else c for i, c in enumerate(addr.hex()))


def sign(sk, msg):
    return coincurve.PrivateKey(sk.to_bytes(32, "big")).sign_recoverable(keccak256(msg), hasher=None)


def emit(name, value):
    print(f'inline constexpr std::string_view {name} =\n    "{value}";')


def main():
    print("// Generated by tests/oracle/gen_vectors.py; do not edit.")
    print("#pragma once\n#include <string_view>\n\nnamespace vectors {\n")
    emit("kH1Empty", h1(b"").hex())
    emit("kH1Abc", h1(b"abc").hex())
    emit("kH1TwoParts", h1(b"ab", b"c").hex())
    emit("kH2Empty", f"{h2(b''):064x}")
    emit("kH2Abc", f"{h2(b'abc'):064x}")

    emit("kG1Generator", enc_g1(bn128.G1).hex())
    emit("kG1Times7", enc_g1(bn128.multiply(bn128.G1, 7)).hex())
    emit("kG1TimesMinus7", enc_g1(bn128.neg(bn128.multiply(bn128.G1, 7))).hex())
    emit("kG2Generator", enc_g2(bn128.G2).hex())
    emit("kG2Times11", enc_g2(bn128.multiply(bn128.G2, 11)).hex())
    emit("kG2TimesMinus11", enc_g2(bn128.neg(bn128.multiply(bn128.G2, 11))).hex())
    emit("kPairingGenerators", enc_gt(bn128.pairing(bn128.G2, bn128.G1)).hex())
    emit("kPairing7x11", enc_gt(bn128.pairing(bn128.multiply(bn128.G2, 11), bn128.multiply(bn128.G1, 7))).hex())

    emit("kKeccakEmpty", keccak256(b"").hex())
    emit("kKeccakLong", keccak256(b"a" * 200).hex())
    emit("kAddressSk1", checksum(address(1)))
    emit("kAddressSkC0ffee", checksum(address(0xC0FFEE)))
    sk = 0x4C0883A69102937D6231471B5DBB6204FE5129617082792AE468D01A3F362318
    emit("kWalletSk", f"{sk:064x}")
    emit("kWalletAddress", checksum(address(sk)))
    emit("kWalletSigHello", sign(sk, b"hello trigger").hex())
    emit("kWalletSigEmpty", sign(sk, b"").hex())
    emit("kSkOneSigAbc", sign(1, b"abc").hex())
    print("\n}  // namespace vectors")


if __name__ == "__main__":
    main()
