import json

import pytest

from tinybunch.catalog import CATALOG, make_witt_shift
from tinybunch.document import (ReportDocument, dumps, export_objects,
                                parse_document, parse_input, report_to_dict,
                                validate_report)
from tinybunch.errors import InputError, UnsupportedError
from tinybunch.liecore import Element, check_jacobi
from tinybunch.bunch import tangent_bracket


def _algebra(brackets, dim=2):
    return {'algebras': {'a': {'kind': 'structure_constants', 'dim': dim,
                               'brackets': brackets}}}


def _input_error(raw):
    with pytest.raises(InputError) as excinfo:
        parse_document(raw)
    return excinfo.value.path


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_catalog_round_trip(name):
    text = dumps(export_objects(CATALOG[name].objects()))
    doc = parse_input(text)

    assert doc.to_json() == text
    assert parse_input(doc.to_json()).to_json() == text


def test_parse_structure_constants():
    doc = parse_document(_algebra([{'i': 0, 'j': 1,
                                    'terms': [{'k': 1, 'c': '-1/2'}]}]))
    br = doc.select('algebras')

    assert br.label == 'a'
    assert br(Element.basis(0), Element.basis(1)) == Element({1: '-1/2'})
    assert br(Element.basis(1), Element.basis(0)) == Element({1: '1/2'})
    assert doc.canonical['algebras']['a']['brackets'][0]['terms'] == \
        [{'k': 1, 'c': '-1/2'}]


def test_parse_operators():
    doc = parse_document({
        'algebras': {'w': {'kind': 'witt', 'window': 3}},
        'operators': {
            'r': {'kind': 'shift', 'offset': 1},
            'd': {'kind': 'diagonal', 'values': [1, '2/3']},
            'm': {'kind': 'matrix', 'matrix': [[0, 1], [1, 0]]},
            'p': {'kind': 'polynomial', 'of': 'r', 'coeffs': [0, 0, 1]},
        },
    })

    assert doc.algebras['w'].default_window == 3
    assert doc.operators['p'](Element.basis(0)) == Element.basis(2)
    assert doc.operators['m'](Element.basis(0)) == Element.basis(1)
    assert doc.canonical['operators']['r'] == {'kind': 'shift', 'offset': 1,
                                               'scale': '1'}
    assert doc.canonical['operators']['p']['coeffs'] == ['0', '0', '1']


def test_pencil_from_operator():
    doc = parse_document({
        'algebras': {'w': {'kind': 'witt'}},
        'operators': {'r': {'kind': 'shift', 'offset': 1}},
        'pencils': {'p': {'base': 'w', 'operator': 'r'}},
    })
    pencil = doc.pencils['p']

    assert pencil.base is doc.algebras['w']
    assert pencil.direction(Element.basis(1), Element.basis(2)) == \
        Element({4: -1})


def test_rejects_lower_entries():
    raw = _algebra([{'i': 1, 'j': 0, 'terms': []}])
    assert _input_error(raw) == 'algebras.a.brackets[0]'


def test_rejects_bad_rational():
    raw = _algebra([{'i': 0, 'j': 1, 'terms': [{'k': 0, 'c': 'x/y'}]}])
    assert _input_error(raw) == 'algebras.a.brackets[0].terms[0].c'


def test_rejects_out_of_range():
    raw = _algebra([{'i': 0, 'j': 1, 'terms': [{'k': 5, 'c': 1}]}])
    assert _input_error(raw) == 'algebras.a.brackets[0].terms[0].k'

    raw = _algebra([{'i': 0, 'j': 2, 'terms': []}])
    assert _input_error(raw) == 'algebras.a.brackets[0].j'


def test_rejects_duplicates():
    raw = _algebra([{'i': 0, 'j': 1, 'terms': []},
                    {'i': 0, 'j': 1, 'terms': []}])
    assert _input_error(raw) == 'algebras.a.brackets[1]'


def test_rejects_unknown_fields():
    assert _input_error({'algebras': {'a': {'kind': 'witt',
                                            'bogus': 1}}}) == 'algebras.a'
    assert _input_error({'bogus': {}}) == ''


def test_rejects_unknown_reference():
    raw = {'algebras': {'w': {'kind': 'witt'}},
           'pencils': {'p': {'base': 'nope', 'direction': 'w'}}}
    assert _input_error(raw) == 'pencils.p.base'


def test_rejects_circular_polynomial():
    raw = {'operators': {
        'p': {'kind': 'polynomial', 'of': 'q', 'coeffs': [1]},
        'q': {'kind': 'polynomial', 'of': 'p', 'coeffs': [1]},
    }}
    assert _input_error(raw) == 'operators.p.of'


def test_rejects_invalid_json():
    with pytest.raises(InputError) as excinfo:
        parse_input('{"algebras": ')

    assert excinfo.value.path == ''
    assert 'invalid JSON' in str(excinfo.value)


def test_rejects_bad_unit():
    raw = {'assoc_algebras': {'a': {
        'dim': 1, 'products': [{'i': 0, 'j': 0,
                                'terms': [{'k': 0, 'c': 2}]}],
        'unit': [{'k': 0, 'c': 1}]}}}
    assert _input_error(raw) == 'assoc_algebras.a'


def test_select():
    doc = parse_document({'algebras': {'a': {'kind': 'witt'},
                                       'b': {'kind': 'witt'}}})

    assert doc.select('algebras', 'b') is doc.algebras['b']

    with pytest.raises(InputError):
        doc.select('algebras')

    with pytest.raises(InputError):
        doc.select('algebras', 'c')

    with pytest.raises(KeyError):
        doc.select('bogus')


def test_export_errors(witt):
    with pytest.raises(ValueError):
        export_objects({'bogus': {}})

    with pytest.raises(UnsupportedError):
        export_objects({'algebras': {
            't': tangent_bracket(witt, make_witt_shift(1))}})


def test_report_document(so3):
    report = ReportDocument(['check', 'jacobi'])
    report.add(check_jacobi(so3))

    data = report.to_dict()
    validate_report(json.loads(json.dumps(data)))

    assert data['verdict'] == 'holds'
    assert data['checks'][0]['tuples_checked'] == 27
    assert not report.failed


def test_report_to_dict_counterexample(sl2):
    from tinybunch.bunch import check_myb

    algebra, operator, _ = sl2
    data = report_to_dict(check_myb(algebra, operator))

    assert data['holds'] is False
    assert data['counterexample']['indices'] == [0, 2]
    assert data['counterexample']['rhs'] == {'terms': [{'k': 1,
                                                        'c': '2'}]}
