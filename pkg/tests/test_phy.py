# Standard library
from unittest import TestCase

# Third party
import numpy as np

from scipy.fft import dct

# Local imports
from splitlora.phy import PhyConfig, SymbolIndex, Waveform, ChirpBank
from splitlora.phy import quantize, quantize_array, dequantize, quantize_gradient, dequantize_gradient
from splitlora.phy import waveform_table, modulate, modulate_fsk, modulate_fsk_bpsk, modulate_batch
from splitlora.phy import chirp, ocdm_multiplex, ocdm_dechirp, multiplex_frames, dechirp_frames
from splitlora.phy import detect_noncoherent, detect_coherent, demodulate_noncoherent, demodulate_coherent
from splitlora.phy import noncoherent_metrics, coherent_metrics, decide_noncoherent, decide_coherent
from splitlora.phy import bandwidth, occupied_bandwidth, access_expansion


class TestPhyConfig(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_defaults(self):
        phy = PhyConfig.from_dict({})

        self.assertEqual(phy.N, 128)
        self.assertEqual(phy.alphabet_size, 128)
        self.assertEqual(phy.oversampling, 1)
        self.assertEqual(phy.samples_per_symbol, 128)

    def test_validation(self):
        for phy_dict in [{'N': 7}, {'amplitude': -1.0}, {'mode': 'qam'}, {'extension': 0}, {'access': 'fdm'},
                         {'ocdm_streams': 0}, {'symbol_period': 0.0}]:
            with self.assertRaises(ValueError, msg=str(phy_dict)):
                PhyConfig.from_dict(phy_dict)

    def test_extension_only_applies_to_the_plain_mode(self):
        self.assertEqual(PhyConfig.from_dict({'N': 16, 'extension': 4}).alphabet_size, 64)
        self.assertEqual(PhyConfig.from_dict({'N': 16, 'extension': 4, 'mode': 'fsk_bpsk'}).alphabet_size, 16)

    def test_ocdm_oversampling(self):
        phy = PhyConfig.from_dict({'N': 16, 'access': 'ocdm', 'ocdm_streams': 6})

        self.assertEqual(phy.streams, 6)
        self.assertEqual(phy.oversampling, 12)
        self.assertEqual(phy.samples_per_symbol, 192)

    def test_default_amplitude_gives_unit_average_power(self):
        for phy_dict in [{'N': 16}, {'N': 128}, {'N': 16, 'extension': 3}, {'N': 8, 'access': 'ocdm'}]:
            phy = PhyConfig.from_dict(phy_dict)
            powers = [Waveform(row).energy / len(row) for row in waveform_table(phy)]
            self.assertAlmostEqual(float(np.mean(powers)), 1.0, places=9)
            self.assertAlmostEqual(phy.symbol_energy / phy.samples_per_symbol, 1.0, places=12)


class TestQuantization(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_quantize_examples(self):
        self.assertEqual(quantize(-1.0, 16), SymbolIndex(0, 1))
        self.assertEqual(quantize(-1.0 + 2.0 * 5 / 16, 16), SymbolIndex(5, 1))
        self.assertEqual(quantize(1.2, 8, 'fsk_bpsk'), SymbolIndex(1, -1))

    def test_ties_are_rounded_away_from_zero(self):
        # N (z + 1) / 2 = 2.5 and -2.5
        self.assertEqual(quantize(-1.0 + 5.0 / 8, 8, 'fsk_bpsk'), SymbolIndex(3, 1))
        self.assertEqual(quantize(-1.0 - 5.0 / 8, 8, 'fsk_bpsk'), SymbolIndex(5, -1))

    def test_plain_mode_clamps(self):
        k, signs, clamped = quantize_array(np.array([-3.0, 0.0, 5.0]), 8, 'plain_fsk', 2)

        np.testing.assert_array_equal(k, [0, 4, 15])
        np.testing.assert_array_equal(signs, [1, 1, 1])
        np.testing.assert_array_equal(clamped, [True, False, True])

    def test_folded_mode_never_clamps(self):
        _, _, clamped = quantize_array(np.linspace(-9, 9, 101), 8, 'fsk_bpsk')
        self.assertFalse(np.any(clamped))

    def test_dequantize(self):
        self.assertEqual(dequantize(SymbolIndex(0), 16), -1.0)
        self.assertEqual(dequantize(SymbolIndex(8), 16), 0.0)
        for k in range(16):
            self.assertEqual(quantize(dequantize(SymbolIndex(k), 16), 16).k, k)

    def test_quantization_error_bound(self):
        N = 32
        z = np.random.default_rng(0).uniform(-1.0, 1.0 - 2.0 / N, size=2000)
        k, _, clamped = quantize_array(z, N)

        self.assertFalse(np.any(clamped))
        self.assertLessEqual(np.max(np.abs(-1.0 + 2.0 * k / N - z)), 1.0 / N + 1e-12)

    def test_non_finite_values_are_rejected(self):
        with self.assertRaises(ValueError):
            quantize(np.nan, 16)
        with self.assertRaises(ValueError):
            quantize_array(np.array([0.0, np.inf]), 16)

    def test_invalid_symbols(self):
        with self.assertRaises(ValueError):
            SymbolIndex(-1)
        with self.assertRaises(ValueError):
            SymbolIndex(3, 0)

    def test_gradient_grid(self):
        N = 16
        values = np.array([0.3, -1.2, 0.0, 0.6])
        indices, scale = quantize_gradient(values, N)

        self.assertAlmostEqual(scale, 1.2 * 16 / 15)
        self.assertTrue(np.all((indices >= 0) & (indices <= N - 1)))
        # The grid step is 2 * scale / N, the quantization error at most half of it
        errors = np.abs(dequantize_gradient(indices, scale, N) - values)
        self.assertLessEqual(np.max(errors), scale / N + 1e-12)

    def test_zero_gradient_has_zero_scale(self):
        indices, scale = quantize_gradient(np.zeros(5), 16)

        self.assertEqual(scale, 0.0)
        np.testing.assert_array_equal(dequantize_gradient(indices, scale, 16), np.zeros(5))


class TestModulation(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_modulate_fsk_example(self):
        phy = PhyConfig.from_dict({'N': 8, 'amplitude': 1.0})
        waveform = modulate_fsk(SymbolIndex(0), phy)

        np.testing.assert_allclose(waveform.samples, np.cos(np.pi * np.arange(8) / 16), atol=1e-12)

    def test_first_sample_is_the_amplitude(self):
        phy = PhyConfig.from_dict({'N': 16, 'amplitude': 0.7})
        np.testing.assert_allclose(waveform_table(phy)[:, 0], 0.7)

    def test_rows_are_scaled_dct_of_unit_vectors(self):
        phy = PhyConfig.from_dict({'N': 16, 'amplitude': 1.0})
        table = waveform_table(phy)
        for k in [0, 3, 15]:
            np.testing.assert_allclose(table[k], 0.5 * dct(np.eye(16)[k], type=2), atol=1e-12)

    def test_gram_matrix(self):
        # All rows share the sample n = 0, every other sample contributes N_s / 2 on the diagonal only
        phy = PhyConfig.from_dict({'N': 16})
        table = waveform_table(phy)
        A_c = phy.carrier_amplitude

        expected = A_c ** 2 * (16 / 2.0 * np.eye(16) + 0.5 * np.ones((16, 16)))
        np.testing.assert_allclose(table @ table.T, expected, atol=1e-9)

    def test_bpsk_negation(self):
        phy = PhyConfig.from_dict({'N': 16, 'mode': 'fsk_bpsk'})
        positive = modulate_fsk_bpsk(SymbolIndex(5, 1), phy)
        negative = modulate_fsk_bpsk(SymbolIndex(5, -1), phy)

        np.testing.assert_array_equal(negative.samples, -positive.samples)
        plain = modulate_fsk(SymbolIndex(5), PhyConfig.from_dict({'N': 16}))
        np.testing.assert_allclose(positive.samples, plain.samples)

    def test_mode_and_range_are_checked(self):
        plain = PhyConfig.from_dict({'N': 8})
        with self.assertRaises(ValueError):
            modulate_fsk(SymbolIndex(8), plain)
        with self.assertRaises(ValueError):
            modulate_fsk_bpsk(SymbolIndex(1), plain)
        with self.assertRaises(ValueError):
            modulate_batch([0, 9], [1, 1], plain)

    def test_batch_agrees_with_single_symbols(self):
        phy = PhyConfig.from_dict({'N': 8, 'mode': 'fsk_bpsk'})
        batch = modulate_batch([2, 7], [-1, 1], phy)

        np.testing.assert_allclose(batch[0], modulate(SymbolIndex(2, -1), phy).samples)
        np.testing.assert_allclose(batch[1], modulate(SymbolIndex(7, 1), phy).samples)


class TestChirps(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_chirp_properties(self):
        psi = chirp(3, 8)

        self.assertAlmostEqual(psi[3], 1.0)
        np.testing.assert_allclose(np.abs(psi), 1.0)
        self.assertLess(abs(np.vdot(chirp(2, 8), chirp(5, 8))), 1e-9)

    def test_chirp_orthogonality(self):
        samples = 16
        chirps = np.array([chirp(m, samples) for m in range(samples)])
        gram = chirps.conj() @ chirps.T

        np.testing.assert_allclose(gram, samples * np.eye(samples), atol=1e-9)

    def test_odd_length_is_rejected(self):
        with self.assertRaises(ValueError):
            chirp(0, 7)
        with self.assertRaises(ValueError):
            chirp(8, 8)

    def test_bank_offsets(self):
        bank = ChirpBank(96, 6)

        self.assertEqual(bank.offsets, [0, 16, 32, 48, 64, 80])
        np.testing.assert_allclose(bank.chirps.conj() @ bank.chirps.T, 96 * np.eye(6), atol=1e-9)

    def test_single_stream_multiplex(self):
        x = modulate(SymbolIndex(3), PhyConfig.from_dict({'N': 8}))
        multiplexed = ocdm_multiplex([x])

        np.testing.assert_allclose(multiplexed.samples, x.samples * chirp(0, 8))
        np.testing.assert_allclose(ocdm_dechirp(multiplexed, 0).samples, x.samples, atol=1e-12)

    def test_zero_streams_multiplex_to_zero(self):
        self.assertEqual(ocdm_multiplex([np.zeros(8), np.zeros(8)]).energy, 0.0)

    def test_dechirp_of_a_chirp(self):
        np.testing.assert_allclose(ocdm_dechirp(chirp(5, 16), 5).samples, np.ones(16), atol=1e-12)

    def test_multiplex_errors(self):
        with self.assertRaises(ValueError):
            ocdm_multiplex([np.ones(8), np.ones(6)])
        with self.assertRaises(ValueError):
            ocdm_multiplex([np.ones(2)] * 3)

    def test_noiseless_recovery_of_six_streams(self):
        phy = PhyConfig.from_dict({'N': 16, 'access': 'ocdm', 'ocdm_streams': 6})
        bank = ChirpBank.for_config(phy)
        rng = np.random.default_rng(3)

        for _ in range(20):
            k = rng.integers(0, 16, size=6)
            frames = modulate_batch(k, np.ones(6), phy)[None, :, :]
            streams = dechirp_frames(multiplex_frames(frames, bank), bank)[0]
            np.testing.assert_array_equal(detect_noncoherent(streams, phy), k)

    def test_noiseless_recovery_with_signs(self):
        phy = PhyConfig.from_dict({'N': 16, 'access': 'ocdm', 'ocdm_streams': 6, 'mode': 'fsk_bpsk'})
        bank = ChirpBank.for_config(phy)
        rng = np.random.default_rng(4)

        k = rng.integers(0, 16, size=6)
        signs = rng.choice([-1, 1], size=6)
        frames = modulate_batch(k, signs, phy)[None, :, :]
        streams = dechirp_frames(multiplex_frames(frames, bank), bank)[0]

        k_hat, signs_hat = detect_coherent(streams, np.ones(6), phy)
        np.testing.assert_array_equal(k_hat, k)
        np.testing.assert_array_equal(signs_hat, signs)


class TestDemodulation(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_noncoherent_loopback(self):
        phy = PhyConfig.from_dict({'N': 16, 'extension': 2})
        for k in range(32):
            self.assertEqual(demodulate_noncoherent(modulate(SymbolIndex(k), phy), phy).k, k)

    def test_noncoherent_is_phase_blind(self):
        phy = PhyConfig.from_dict({'N': 16})
        rng = np.random.default_rng(0)
        for k in range(16):
            y = modulate(SymbolIndex(k), phy).samples + 0.3 * rng.standard_normal(16)
            expected = demodulate_noncoherent(y, phy)
            for theta, c in [(np.pi / 2, 1.0), (1.3, 0.2), (-2.9, 5.0)]:
                self.assertEqual(demodulate_noncoherent(c * np.exp(1j * theta) * y, phy), expected)

    def test_noncoherent_rejects_the_folded_mode(self):
        phy = PhyConfig.from_dict({'N': 16, 'mode': 'fsk_bpsk'})
        with self.assertRaises(ValueError):
            demodulate_noncoherent(np.zeros(16), phy)

    def test_coherent_loopback_with_rotation(self):
        phy = PhyConfig.from_dict({'N': 16, 'mode': 'fsk_bpsk'})
        h = np.exp(1j * np.pi / 3)
        for k in range(16):
            for sign in [-1, 1]:
                y = h * modulate(SymbolIndex(k, sign), phy).samples
                self.assertEqual(demodulate_coherent(y, h, phy), SymbolIndex(k, sign))

    def test_coherent_rejects_vanishing_gains(self):
        phy = PhyConfig.from_dict({'N': 16, 'mode': 'fsk_bpsk'})
        with self.assertRaises(ValueError):
            demodulate_coherent(np.zeros(16), 1e-13, phy)
        with self.assertRaises(ValueError):
            demodulate_coherent(np.zeros(16), 1.0, PhyConfig.from_dict({'N': 16}))

    def test_metrics_of_repeated_receptions_add_up(self):
        phy = PhyConfig.from_dict({'N': 16})
        rng = np.random.default_rng(2)
        Y = modulate_batch(np.array([3, 9]), np.ones(2), phy) + rng.standard_normal((2, 16))
        combined = noncoherent_metrics(Y, phy) + noncoherent_metrics(2.0 * Y, phy)

        np.testing.assert_allclose(combined, 5.0 * noncoherent_metrics(Y, phy))
        np.testing.assert_array_equal(decide_noncoherent(combined), detect_noncoherent(Y, phy))

    def test_coherent_decision(self):
        phy = PhyConfig.from_dict({'N': 16, 'mode': 'fsk_bpsk'})
        h = 0.5 * np.exp(-1j * np.pi / 5)
        Y = h * modulate_batch(np.array([2, 11, 0]), np.array([1, -1, -1]), phy)
        metrics = coherent_metrics(Y, h, phy)

        self.assertEqual(metrics.shape, (3, 16))
        k, signs = decide_coherent(metrics)
        np.testing.assert_array_equal(k, [2, 11, 0])
        np.testing.assert_array_equal(signs, [1, -1, -1])
        self.assertGreater(metrics[0, 2], 0)
        self.assertLess(metrics[1, 11], 0)

        k, signs = decide_coherent(metrics + coherent_metrics(Y, h, phy))
        np.testing.assert_array_equal(k, [2, 11, 0])
        np.testing.assert_array_equal(signs, [1, -1, -1])

    def test_ties_go_to_the_lowest_index(self):
        phy = PhyConfig.from_dict({'N': 16})
        self.assertEqual(detect_noncoherent(np.zeros((1, 16)), phy)[0], 0)


class TestBandwidth(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_bandwidth(self):
        self.assertEqual(bandwidth(128, 1e-3), 64000.0)
        self.assertEqual(bandwidth(256, 1e-3), 2 * bandwidth(128, 1e-3))
        with self.assertRaises(ValueError):
            bandwidth(128, 0.0)

    def test_extended_alphabet_and_access(self):
        plain = PhyConfig.from_dict({'N': 128, 'extension': 4})
        ocdm = PhyConfig.from_dict({'N': 128, 'access': 'ocdm', 'ocdm_streams': 6})

        self.assertEqual(occupied_bandwidth(plain), 4 * 64000.0)
        self.assertEqual(access_expansion(plain), 1)
        self.assertEqual(access_expansion(ocdm), 6)
