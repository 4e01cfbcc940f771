import numpy as np
import pytest

from mapeq import (
    DNA,
    Alphabet,
    EmptySequence,
    EncodedSequence,
    LagOutOfRange,
    MappingTable,
    Profile,
    SymbolSequence,
    WeightedOperatorSpec,
    WeightLengthMismatch,
    autocorrelation,
    builtin_mapping,
    encode,
    magnitude_spectrum,
    pair_count_decomposition,
    random_orthogonal,
    read_profile_csv,
    weighted_correlation,
    write_profile_csv,
)

from conftest import (
    columns,
    random_sequence,
    random_table,
    ref_autocorr_circular,
    ref_autocorr_truncated,
    ref_spectrum,
)


def encoded(text, mapping):
    return encode(SymbolSequence.from_text(DNA, text), builtin_mapping(mapping))


class TestAutocorrelation:
    def test_constant_symbol_unit_vector(self):
        x = encoded("AAAA", "voss")
        p = autocorrelation(x, 3, "circular")
        assert p.values.tolist() == [1.0, 1.0, 1.0, 1.0]

    def test_atat_under_ry(self):
        x = encoded("ATAT", "ry_1d")
        p = autocorrelation(x, 3, "circular")
        oracle = ref_autocorr_circular(columns(x), 3)
        np.testing.assert_allclose(p.values, oracle, atol=1e-15)
        assert p.values.tolist() == [1.0, -1.0, 1.0, -1.0]

    def test_zero_mapping_gives_zero_profile(self):
        table = MappingTable(DNA, np.zeros((4, 3)))
        x = encode(SymbolSequence.from_text(DNA, "ATGCGT"), table)
        p = autocorrelation(x, 5)
        assert np.all(p.values == 0.0)

    @pytest.mark.parametrize("boundary", ["circular", "truncated"])
    def test_matches_direct_summation_oracle(self, rng, boundary):
        ref = {
            "circular": ref_autocorr_circular,
            "truncated": ref_autocorr_truncated,
        }[boundary]
        for _ in range(10):
            table = random_table(rng, dim=int(rng.integers(1, 4)))
            seq = random_sequence(rng, int(rng.integers(2, 40)))
            x = encode(seq, table)
            lag = int(rng.integers(0, len(seq)))
            p = autocorrelation(x, lag, boundary)
            np.testing.assert_allclose(
                p.values, ref(columns(x), lag), rtol=1e-12, atol=1e-12
            )

    def test_truncated_divides_by_full_length(self):
        # two terms survive at lag 2 but the divisor stays N=4
        x = encoded("AAAA", "voss")
        p = autocorrelation(x, 3, "truncated")
        assert p.values.tolist() == [1.0, 0.75, 0.5, 0.25]

    def test_errors(self):
        x = encoded("ATGC", "voss")
        with pytest.raises(LagOutOfRange):
            autocorrelation(x, 4)
        with pytest.raises(LagOutOfRange):
            autocorrelation(x, -1)
        empty = EncodedSequence(np.empty((4, 0)))
        with pytest.raises(EmptySequence):
            autocorrelation(empty, 0)

    def test_profile_metadata(self):
        p = autocorrelation(encoded("ATGC", "voss"), 2, "truncated")
        assert p.kind == "correlation"
        assert p.meta["N"] == 4 and p.meta["boundary"] == "truncated"
        assert p.params.tolist() == [0, 1, 2]


class TestMagnitudeSpectrum:
    def test_constant_signal_is_pure_dc(self):
        x = encoded("GGGGGGGG", "voss")
        p = magnitude_spectrum(x)
        assert abs(p.values[0] - 1.0) < 1e-12
        assert np.all(np.abs(p.values[1:]) < 1e-12)

    def test_alternating_signal_hits_nyquist_bin(self):
        x = encoded("ATATATAT", "ry_1d")
        p = magnitude_spectrum(x)
        oracle = ref_spectrum(columns(x))
        np.testing.assert_allclose(p.values, oracle, atol=1e-12)
        assert abs(p.values[4] - 1.0) < 1e-12
        assert np.all(np.abs(np.delete(p.values, 4)) < 1e-12)

    def test_parseval_atgc_voss(self):
        p = magnitude_spectrum(encoded("ATGC", "voss"))
        assert abs(p.values.sum() - 1.0) < 1e-12

    def test_parseval_random(self, rng):
        for n in (3, 64, 1000, 4096):
            table = random_table(rng)
            seq = random_sequence(rng, n)
            x = encode(seq, table)
            p = magnitude_spectrum(x)
            energy = np.sum(x.columns**2) / n
            assert abs(p.values.sum() - energy) <= 1e-9 * energy

    def test_fft_equals_naive(self, rng):
        for n in (2, 7, 64, 255, 1024):
            x = EncodedSequence(rng.standard_normal((3, n)))
            fft = magnitude_spectrum(x, method="fft")
            naive = magnitude_spectrum(x, method="naive")
            np.testing.assert_allclose(
                fft.values, naive.values,
                rtol=1e-9, atol=1e-12 * fft.values.max(),
            )

    def test_naive_matches_cmath_oracle(self, rng):
        x = EncodedSequence(rng.standard_normal((2, 17)))
        naive = magnitude_spectrum(x, method="naive")
        np.testing.assert_allclose(
            naive.values, ref_spectrum(columns(x)), rtol=1e-10, atol=1e-14
        )

    def test_empty(self):
        with pytest.raises(EmptySequence):
            magnitude_spectrum(EncodedSequence(np.empty((1, 0))))


class TestWeightedCorrelation:
    def test_constant_weights_scale_autocorrelation(self, rng):
        table = random_table(rng)
        seq = random_sequence(rng, 32)
        x = encode(seq, table)
        spec = WeightedOperatorSpec(np.full(32, 2.0))
        phi = weighted_correlation(x, spec, 31)
        r = autocorrelation(x, 31, "circular")
        np.testing.assert_allclose(phi.values, 32 * r.values, rtol=1e-12)

    def test_single_weight(self, rng):
        x = encode(random_sequence(rng, 8), random_table(rng))
        w = np.zeros(8)
        w[0] = 1.0
        phi = weighted_correlation(x, WeightedOperatorSpec(w), 7)
        for lag in range(8):
            expect = 0.5 * float(x.columns[:, 0] @ x.columns[:, (-lag) % 8])
            assert abs(phi.values[lag] - expect) < 1e-12

    def test_negative_leading_weight_flips_sign(self, rng):
        x = encode(random_sequence(rng, 16), random_table(rng))
        w = rng.standard_normal(16)
        pos = weighted_correlation(x, WeightedOperatorSpec(np.abs(w) + 0.1), 15)
        negw = -(np.abs(w) + 0.1)
        neg = weighted_correlation(x, WeightedOperatorSpec(negw), 15)
        np.testing.assert_allclose(neg.values, -pos.values, rtol=1e-12)

    def test_sign_of_zero_is_positive(self, rng):
        x = encode(random_sequence(rng, 4), random_table(rng))
        w = np.array([0.0, 0.0, 0.0, -2.0])
        phi = weighted_correlation(x, WeightedOperatorSpec(w), 3)
        manual = 0.5 * 1.0 * 2.0 * np.array(
            [float(x.columns[:, 3] @ x.columns[:, (3 - l) % 4]) for l in range(4)]
        )
        np.testing.assert_allclose(phi.values, manual, rtol=1e-12)

    def test_rotation_scaling_covariance(self, rng):
        x = encode(random_sequence(rng, 24), random_table(rng, dim=3))
        w = rng.standard_normal(24)
        spec = WeightedOperatorSpec(w)
        base = weighted_correlation(x, spec, 23)
        lam = 1.7
        rot = random_orthogonal(3, seed=5)
        x2 = EncodedSequence(lam * rot @ x.columns)
        moved = weighted_correlation(x2, spec, 23)
        np.testing.assert_allclose(moved.values, lam**2 * base.values, rtol=1e-9)

    def test_weight_length_mismatch(self, rng):
        x = encode(random_sequence(rng, 8), random_table(rng))
        with pytest.raises(WeightLengthMismatch):
            weighted_correlation(x, WeightedOperatorSpec(np.ones(7)), 3)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            WeightedOperatorSpec(np.zeros(4))
        with pytest.raises(ValueError):
            WeightedOperatorSpec([1.0, np.inf])


class TestPairCountDecomposition:
    def test_single_symbol(self):
        seq = SymbolSequence.from_text(DNA, "AAAA")
        tables, _ = pair_count_decomposition(seq, builtin_mapping("voss"), 1)
        assert tables[1].count("A", "A") == 4
        assert tables[1].total() == 4

    def test_atat_lag1(self):
        seq = SymbolSequence.from_text(DNA, "ATAT")
        tables, _ = pair_count_decomposition(seq, builtin_mapping("ry_1d"), 1)
        t1 = tables[1]
        assert t1.count("A", "T") == 2 and t1.count("T", "A") == 2
        assert t1.count("A", "A") == 0 and t1.count("T", "T") == 0

    def test_reconstruction_equals_autocorrelation_atgc(self):
        seq = SymbolSequence.from_text(DNA, "ATGC")
        table = builtin_mapping("voss")
        _, rec = pair_count_decomposition(seq, table, 3)
        direct = autocorrelation(encode(seq, table), 3, "circular")
        np.testing.assert_allclose(rec.values, direct.values, atol=1e-12)

    def test_reconstruction_random_instances(self, rng):
        for _ in range(40):
            size = int(rng.integers(2, 7))
            alphabet = Alphabet([chr(ord("A") + i) for i in range(size)])
            table = MappingTable(alphabet, rng.standard_normal((size, 3)))
            seq = SymbolSequence(alphabet, rng.integers(0, size, int(rng.integers(2, 257))))
            lag = min(len(seq) - 1, int(rng.integers(0, 64)))
            tables, rec = pair_count_decomposition(seq, table, lag)
            direct = autocorrelation(encode(seq, table), lag, "circular")
            np.testing.assert_allclose(rec.values, direct.values, atol=1e-12)
            assert all(t.total() == len(seq) for t in tables)

    def test_errors(self):
        seq = SymbolSequence.from_text(DNA, "ATGC")
        with pytest.raises(LagOutOfRange):
            pair_count_decomposition(seq, builtin_mapping("voss"), 4)
        with pytest.raises(EmptySequence):
            pair_count_decomposition(SymbolSequence(DNA, []), builtin_mapping("voss"), 0)


class TestRotationCovariance:
    """Profiles transform by lambda^2 under x -> lambda R x."""

    @pytest.mark.parametrize("op", ["correlation", "spectrum", "weighted"])
    def test_covariance(self, rng, op):
        for _ in range(5):
            dim = int(rng.integers(1, 5))
            n = int(rng.integers(8, 64))
            x = encode(random_sequence(rng, n), random_table(rng, dim=dim))
            lam = float(rng.uniform(0.3, 2.5))
            rot = random_orthogonal(dim, seed=int(rng.integers(0, 1 << 30)))
            x2 = EncodedSequence(lam * rot @ x.columns)
            if op == "correlation":
                a = autocorrelation(x, n - 1).values
                b = autocorrelation(x2, n - 1).values
            elif op == "spectrum":
                a = magnitude_spectrum(x).values
                b = magnitude_spectrum(x2).values
            else:
                spec = WeightedOperatorSpec(rng.standard_normal(n))
                a = weighted_correlation(x, spec, n - 1).values
                b = weighted_correlation(x2, spec, n - 1).values
            np.testing.assert_allclose(b, lam**2 * a, rtol=1e-9, atol=1e-12)


class TestProfileCsv:
    def test_round_trip(self, tmp_path):
        p = autocorrelation(encoded("ATGCATGC", "paired_pm"), 5)
        path = tmp_path / "prof.csv"
        write_profile_csv(p, path, mapping="paired_pm")
        q = read_profile_csv(path)
        assert q.kind == "correlation"
        assert q.params.tolist() == p.params.tolist()
        assert q.values.tolist() == p.values.tolist()  # repr round-trips exactly
        assert q.meta["mapping"] == "paired_pm" and q.meta["N"] == 8

    def test_deterministic_bytes(self, tmp_path):
        p = magnitude_spectrum(encoded("ATGCGTAC", "fig7_m2"))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_profile_csv(p, a)
        write_profile_csv(p, b)
        assert a.read_bytes() == b.read_bytes()


def test_profile_validation():
    with pytest.raises(ValueError):
        Profile("correlation", [0, 0, 1], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        Profile("correlation", [0, 1], [1.0, np.nan])
    with pytest.raises(ValueError):
        Profile("nonsense", [0], [1.0])
