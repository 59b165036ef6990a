"""Esquemas JSON das entradas e dos relatórios da linha de comando."""

RACIONAL = {
    'oneOf': [
        {'type': 'integer'},
        {'type': 'string', 'pattern': r'^\s*-?\d+(\s*/\s*-?\d+)?\s*$'},
    ]
}

MATRIZ = {'type': 'array', 'items': {'type': 'array', 'items': RACIONAL}}

VETOR = {'type': 'array', 'items': RACIONAL}

ALGEBRA_SCHEMA = {
    'type': 'object',
    'required': ['vertices', 'arrows'],
    'properties': {
        'vertices': {'type': 'array', 'items': {'type': ['string', 'integer']}, 'minItems': 1},
        'arrows': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['name', 'from', 'to'],
                'properties': {
                    'name': {'type': 'string'},
                    'from': {'type': ['string', 'integer']},
                    'to': {'type': ['string', 'integer']},
                },
            },
        },
        'relations': {
            'type': 'array',
            'items': {
                'type': 'array',
                'items': {
                    'type': 'object',
                    'required': ['path'],
                    'properties': {
                        'path': {'type': 'array', 'items': {'type': 'string'}},
                        'coeff': RACIONAL,
                    },
                },
            },
        },
    },
}

MODULE_SCHEMA = {
    'type': 'object',
    'required': ['algebra', 'dims'],
    'properties': {
        'algebra': ALGEBRA_SCHEMA,
        'dims': {'type': 'object', 'additionalProperties': {'type': 'integer', 'minimum': 0}},
        'maps': {'type': 'object', 'additionalProperties': MATRIZ},
    },
}

WEIGHTS_SCHEMA = {
    'type': 'object',
    'required': ['classes'],
    'properties': {
        'classes': {
            'type': 'array',
            'minItems': 1,
            'items': {
                'type': 'object',
                'required': ['weight', 'vertices'],
                'properties': {
                    'weight': {'type': 'integer'},
                    'vertices': {'type': 'array', 'items': {'type': ['string', 'integer']}},
                },
            },
        },
    },
}

COMPARISON_SCHEMA = {
    'type': 'object',
    'required': ['u'],
    'properties': {
        'field': {'type': 'array', 'items': {'type': 'integer'}, 'minItems': 2},
        'embedding_of_K': VETOR,
        'u': {'type': 'object', 'additionalProperties': VETOR},
    },
}

RELATION_SCHEMA = {
    'type': 'object',
    'required': ['tensor'],
    'properties': {'tensor': MATRIZ},
}

SEQUENCE_SCHEMA = {
    'type': 'object',
    'required': ['module', 'sub', 'classes'],
    'properties': {
        'module': MODULE_SCHEMA,
        'sub': {'type': 'array', 'items': VETOR},
        'classes': {
            'type': 'array',
            'minItems': 2,
            'maxItems': 2,
            'items': {'type': 'array', 'items': {'type': ['string', 'integer']}},
        },
    },
}

TARGET_SCHEMA = {
    'type': 'object',
    'required': ['vectors'],
    'properties': {
        'kind': {'enum': ['lift', 'extension']},
        'power': {'type': 'integer', 'minimum': 1},
        'vectors': {'type': 'array', 'items': VETOR},
    },
}

ONEMOTIVE_SCHEMA = {
    'type': 'object',
    'required': ['B', 'HA', 'HT', 'HL'],
    'properties': {
        'B': {
            'type': 'object',
            'required': ['names', 'table'],
            'properties': {
                'names': {'type': 'array', 'items': {'type': 'string'}},
                'table': {'type': 'array', 'items': {'type': 'array', 'items': VETOR}},
            },
        },
        'HA': {'type': 'array', 'items': MATRIZ},
        'HT': {'type': 'array', 'items': MATRIZ},
        'HL': {'type': 'array', 'items': MATRIZ},
    },
}

INPUT_SCHEMAS = {
    'module': MODULE_SCHEMA,
    'weights': WEIGHTS_SCHEMA,
    'comparison': COMPARISON_SCHEMA,
    'relation': RELATION_SCHEMA,
    'sequence': SEQUENCE_SCHEMA,
    'target': TARGET_SCHEMA,
    'onemotive': ONEMOTIVE_SCHEMA,
}


def _relatorio(*obrigatorios, **propriedades):
    return {'type': 'object', 'required': list(obrigatorios), 'properties': propriedades}


PERIOD_SPACE_REPORT = _relatorio(
    'provenance', 'dim', 'ambient_dim', 'certified', 'complete', 'basis', 'relations',
    dim={'type': 'integer', 'minimum': 0},
    ambient_dim={'type': 'integer', 'minimum': 0},
    certified={'type': 'boolean'},
    complete={'type': 'boolean'},
    basis={'type': 'array', 'items': {'type': 'array', 'items': {'type': 'integer'}}},
    relations={'type': 'array', 'items': MATRIZ},
)

DERIVATION_NODE = {
    'type': 'object',
    'required': ['rule', 'subject_dims', 'witnesses', 'children'],
    'properties': {
        'rule': {'enum': ['Semisimple', 'SatPrincipal', 'SatPrincipalVar', 'SumLemma', 'DimGap']},
        'subject_dims': {'type': 'array', 'items': {'type': 'integer'}},
        'witnesses': {'type': 'object'},
        'children': {'type': 'array', 'items': {'$ref': '#/definitions/node'}},
    },
}

REPORT_SCHEMAS = {
    'period': PERIOD_SPACE_REPORT,
    'depth': PERIOD_SPACE_REPORT,
    'endo': PERIOD_SPACE_REPORT,
    'certify': {
        'type': 'object',
        'required': ['status', 'module_dims', 'derivation', 'gap', 'notes'],
        'properties': {
            'status': {'enum': ['Certified', 'Refuted', 'Unknown']},
            'module_dims': {'type': 'array', 'items': {'type': 'integer'}},
            'derivation': {'oneOf': [{'type': 'null'}, {'$ref': '#/definitions/node'}]},
            'gap': {'type': ['object', 'null']},
            'notes': {'type': 'array', 'items': {'type': 'string'}},
        },
        'definitions': {'node': DERIVATION_NODE},
    },
    'realize': _relatorio('m', 'submodule_dim', 'quotient_dims', 'sigma', 'omega', 'target',
                          m={'type': 'integer', 'minimum': 0}),
    'eval': _relatorio('dim_P', 'values', 'ambient_kernel_dim', 'relation_dim', 'conjecture_kernel',
                       'injective', 'realizations', injective={'type': 'boolean'}),
    'lift': _relatorio('sequence', 'kind', 'result', 'result_dims', 'saturation',
                       kind={'enum': ['lift', 'extension']}, sequence={'type': 'object'}),
    'explore': _relatorio('status', 'steps', 'visited', 'power', status={'enum': ['Reached', 'Unknown']}),
    'onemotive': _relatorio('formula', 'model', 'H_dim', 'End_dim', 'matches', matches={'type': 'boolean'}),
    'baker': _relatorio('formula', 'model', 'matches', formula={'type': 'integer'}),
    'error': _relatorio('erro', 'tipo', erro={'type': 'string'}, tipo={'type': 'string'}),
}
