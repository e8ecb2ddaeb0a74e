from .minimax import BACKEND, game_tables, minimax_game, replay_witness
from .refine import (DECIDERS, KINDS, Arena, EquivalenceReport, GameError, LevelPartition,
                     build_arena, decide, equivalence_classes, global_graded_bisim,
                     graded_bisim, model_classes, two_pebble_equiv)
