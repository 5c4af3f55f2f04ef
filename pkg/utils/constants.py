"""
Application constants
"""
PROBLEM_CONFIG = {
    'oct': {
        'display': 'Odd Cycle Transversal',
        'deletes': 'vertices',
        'vertex_problem': True,
    },
    'eb': {
        'display': 'Edge Bipartization',
        'deletes': 'edges',
        'vertex_problem': False,
    },
}

ENGINES = ('baker', 'dp', 'brute')

GENERATOR_KINDS = ('grid', 'cycle', 'random-planar', 'grid-with-chords')

CORPUS_NAMES = ('default', 'full', 'empty')

# fields dropped before two JSON reports are compared
VOLATILE_FIELDS = ('wall_ms', 'generated_at')
