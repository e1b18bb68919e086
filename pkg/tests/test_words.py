import itertools

import pytest

from fibtools.density import gelfond_member
from fibtools.fibcore import fib
from fibtools.words import (
    FIBONACCI,
    THUE_MORSE,
    Morphism,
    Word,
    balanced_formula,
    balanced_forms,
    count_balanced_bruteforce,
    is_balanced,
    kfib_word,
    morphic_prefix,
)


def balanced_oracle(w):
    # compare the letter-1 counts of every pair of equal-length factors
    n = len(w)
    for m in range(1, n + 1):
        sums = [sum(w[i : i + m]) for i in range(n - m + 1)]
        if max(sums) - min(sums) > 1:
            return False
    return True


def test_balance_matches_oracle_all_short_words():
    for n in range(0, 13):
        for letters in itertools.product((0, 1), repeat=n):
            assert is_balanced(Word(letters)).balanced == balanced_oracle(letters)


def test_witness():
    rep = is_balanced("1100")
    assert not rep.balanced
    assert (str(rep.witness[0]), str(rep.witness[1])) == ("11", "00")
    rep = is_balanced("0101100")
    a, b = rep.witness
    assert len(a) == len(b) and sum(a.letters) - sum(b.letters) == 2


def test_non_binary_rejected():
    with pytest.raises(ValueError):
        is_balanced("012")


def test_thue_morse_parity():
    w = morphic_prefix(THUE_MORSE, 0, 1 << 16)
    for n in range(1 << 16):
        assert (w[n] == 0) == gelfond_member(n)


def test_fibonacci_word():
    assert str(morphic_prefix(FIBONACCI, 0, 13)) == "0100101001001"
    w = morphic_prefix(FIBONACCI, 0, 500)
    for n in range(1, 501):
        assert is_balanced(w[:n]).balanced
    # finite words f_n = f_(n-1) f_(n-2) are prefixes of the fixed point
    for n in range(3, 14):
        assert kfib_word(1, n) + kfib_word(1, n - 1) == kfib_word(1, n + 1)
        assert len(kfib_word(1, n)) == fib(n)


def test_kfib_lengths():
    assert [len(kfib_word(2, n)) for n in range(1, 9)] == [1, 2, 5, 12, 29, 70, 169, 408]
    for k in range(1, 5):
        for n in range(3, 10):
            assert len(kfib_word(k, n)) == k * len(kfib_word(k, n - 1)) + len(kfib_word(k, n - 2))


def test_morphism_checks():
    with pytest.raises(ValueError):
        morphic_prefix(Morphism.from_strings({"0": "10", "1": "0"}), 0, 5)
    with pytest.raises(ValueError):
        Morphism({0: ()}, 2)


def test_counts(backend):
    assert count_balanced_bruteforce(4) == 14
    assert count_balanced_bruteforce(5) == 24
    assert count_balanced_bruteforce(16) == 498
    for n in range(1, 17):
        assert balanced_formula(n) == count_balanced_bruteforce(n)


def test_brute_force_matches_oracle():
    for n in range(1, 11):
        assert count_balanced_bruteforce(n) == sum(
            balanced_oracle(w) for w in itertools.product((0, 1), repeat=n)
        )


def test_closed_forms_agree():
    for n in range(1, 201):
        assert len(set(balanced_forms(n))) == 1
    assert balanced_formula(4) == 14


def test_bruteforce_cap():
    with pytest.raises(ValueError):
        count_balanced_bruteforce(21)
