from dataclasses import dataclass

from kgc_study_kit.instruments.usability import (
    PssuqResponse,
    PssuqScores,
    SusResponse,
    score_pssuq,
    score_sus,
)
from kgc_study_kit.instruments.workload import (
    TlxResponse,
    WpResponse,
    score_raw_tlx,
    score_tlx,
    score_wp,
    tlx_weights,
)


@dataclass(frozen=True)
class InstrumentResponse:
    """All post-task questionnaires of one participant."""
    sus: SusResponse
    pssuq: PssuqResponse
    tlx: TlxResponse
    wp: WpResponse


@dataclass(frozen=True)
class ParticipantScores:
    sus: float
    pssuq: PssuqScores
    tlx: float
    raw_tlx: float
    wp: float
    tlx_weights: tuple

    def as_dict(self) -> dict:
        return {
            "sus": self.sus,
            "pssuq": self.pssuq.as_dict(),
            "tlx": self.tlx,
            "rawTlx": self.raw_tlx,
            "wp": self.wp,
            "tlxWeights": list(self.tlx_weights),
        }


def score_participant(response: InstrumentResponse) -> ParticipantScores:
    return ParticipantScores(
        sus=score_sus(response.sus),
        pssuq=score_pssuq(response.pssuq),
        tlx=score_tlx(response.tlx),
        raw_tlx=score_raw_tlx(response.tlx),
        wp=score_wp(response.wp),
        tlx_weights=tlx_weights(response.tlx.choices),
    )
