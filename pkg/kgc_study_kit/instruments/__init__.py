# Questionnaire scoring (SUS, PSSUQ, NASA-TLX, WP) and the participant model
from .participant import Motivation, ParticipantRecord, ParticipationMode, Role
from .scores import InstrumentResponse, ParticipantScores, score_participant
from .usability import (
    PSSUQ_SUBSCALES,
    PssuqResponse,
    PssuqScores,
    SusResponse,
    score_pssuq,
    score_sus,
    sus_item_contributions,
)
from .workload import (
    TLX_FACTORS,
    WP_DIMENSIONS,
    PairwiseChoice,
    TlxResponse,
    WpResponse,
    score_raw_tlx,
    score_tlx,
    score_wp,
    tlx_weights,
)

__all__ = [
    "InstrumentResponse",
    "Motivation",
    "PSSUQ_SUBSCALES",
    "PairwiseChoice",
    "ParticipantRecord",
    "ParticipantScores",
    "ParticipationMode",
    "PssuqResponse",
    "PssuqScores",
    "Role",
    "SusResponse",
    "TLX_FACTORS",
    "TlxResponse",
    "WP_DIMENSIONS",
    "WpResponse",
    "score_participant",
    "score_pssuq",
    "score_raw_tlx",
    "score_sus",
    "score_tlx",
    "score_wp",
    "sus_item_contributions",
    "tlx_weights",
]
