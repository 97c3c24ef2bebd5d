"""Channel model for a 2-user Gaussian MAC sharing its medium with a P2P link.

Receiver 1 observes the two MAC transmitters at unit gain plus the
point-to-point transmitter at amplitude gain h31; receiver 2 observes the
point-to-point transmitter at unit gain plus the MAC transmitters at gains
h12 and h22.  Both receivers see AWGN with unit variance, so transmit powers
double as SNRs and nothing here carries a noise-variance knob.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

TRANSMITTERS = (1, 2, 3)
RECEIVERS = (1, 2)


@dataclass(frozen=True)
class ChannelParams:
    """Transmit powers and cross-gain amplitudes defining the channel.

    Powers are linear and relative to the unit noise variance.  Gains are
    stored as (signed) amplitudes; every capacity expression uses their
    squares, but keeping the sign lets magnitude conditions such as the
    noisy-interference check stay faithful to the model.
    """

    p1: float
    p2: float
    p3: float
    h12: float
    h22: float
    h31: float

    def __post_init__(self):
        for name in ("p1", "p2", "p3"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a nonnegative finite power, got {value!r}")
        for name in ("h12", "h22", "h31"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be a finite gain, got {value!r}")

    def power(self, tx: int) -> float:
        if tx == 1:
            return self.p1
        if tx == 2:
            return self.p2
        if tx == 3:
            return self.p3
        raise ValueError(f"transmitter id must be 1, 2 or 3, got {tx!r}")

    def gain(self, tx: int, rx: int) -> float:
        """Effective amplitude gain from transmitter ``tx`` to receiver ``rx``.

        Direct links (1->1, 2->1, 3->2) are unit gain by construction.
        """
        if rx == 1:
            if tx in (1, 2):
                return 1.0
            if tx == 3:
                return self.h31
        elif rx == 2:
            if tx == 1:
                return self.h12
            if tx == 2:
                return self.h22
            if tx == 3:
                return 1.0
        if tx not in TRANSMITTERS:
            raise ValueError(f"transmitter id must be 1, 2 or 3, got {tx!r}")
        raise ValueError(f"receiver id must be 1 or 2, got {rx!r}")


def cap(snr: float) -> float:
    """Gaussian capacity 0.5*log2(1 + snr) in bits per channel use."""
    if not (snr >= 0):
        raise ValueError(f"snr must be nonnegative, got {snr!r}")
    return 0.5 * math.log2(1.0 + snr)


def effective_snr(params: ChannelParams, subset: Iterable[int], receiver: int) -> float:
    """Received SNR at ``receiver`` from the transmitters in ``subset``.

    Sums gain(i, receiver)**2 * P_i over the subset; the empty subset gives 0.
    """
    if receiver not in RECEIVERS:
        raise ValueError(f"receiver id must be 1 or 2, got {receiver!r}")
    txs = sorted(set(subset))
    for tx in txs:
        if tx not in TRANSMITTERS:
            raise ValueError(f"transmitter id must be 1, 2 or 3, got {tx!r}")
    total = 0.0
    for tx in txs:
        g = params.gain(tx, receiver)
        total += g * g * params.power(tx)
    return total
