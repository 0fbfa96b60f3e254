"""Word calculus for the two autoequivalence generators R and S.

R tensors by the degree-one line bundle, S is the curve's Fourier
transform.  On the signed K-class (rank, degree) they act through
SL(2, Z); the solvers below produce explicit words realizing the
rank-flip T_r, the r-inversion U_r, and arbitrary transport between
pairs with equal orbit invariants.
"""

from sklab.mukai import (Bundle, GroupWord, KVector, Torsion, act_word,
                         orbit_invariants, solve_T_r, solve_U_r,
                         solve_transporter, word_matrix)


def main():
    e = Bundle(2, 7, 0)
    print(f"start object: {e}")
    for text in ["R", "S", "S S", "R S R", "S S S S"]:
        word = GroupWord.parse(text)
        print(f"  {text:>8} . E = {act_word(e, word)}")

    braid, ss = GroupWord.parse("R S R S R S"), GroupWord.parse("S S")
    probe = Torsion(0)
    print(f"\nbraid check on {probe}: (RS)^3 gives {act_word(probe, braid)}, "
          f"S^2 gives {act_word(probe, ss)}")

    word, e_prime = solve_T_r(e)
    print(f"\nT_r word for {e}: {word}")
    print(f"  O_X lands on {e_prime}, matrix {word_matrix(word)}")

    word, r_dprime = solve_U_r(e)
    print(f"U_r word for {e}: {word}")
    print(f"  companion rank r'' = {r_dprime}")

    src = (KVector(1, 0), KVector(2, 7))
    dst = (KVector(1, 2), KVector(2, 11))
    inv = orbit_invariants(*src)
    print(f"\ntransport {src[0].as_tuple()},{src[1].as_tuple()} -> "
          f"{dst[0].as_tuple()},{dst[1].as_tuple()} "
          f"(det = {inv.det}, alpha = {inv.alpha}):")
    word = solve_transporter(src, dst)
    print(f"  word: {word}  (length {len(word)})")
    print(f"  matrix: {word_matrix(word)}")


if __name__ == "__main__":
    main()
