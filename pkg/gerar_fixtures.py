"""Script para regenerar os arquivos de fixtures/ a partir do corpus"""
import os

from app import create_app
from app.routes.common import dumps
from app.services.corpus import a2, modules_of, weights_for
from app.services.loaders import module_to_dict, sequence_to_dict
from app.services.quivalg import core_submodule

PASTA = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')


def escrever(nome, dados):
    caminho = os.path.join(PASTA, nome)
    with open(caminho, 'w', encoding='utf-8') as f:
        f.write(dumps(dados) + '\n')
    print(f"  ✓ {nome}")


def gerar():
    app = create_app()

    with app.app_context():
        print("\n" + "=" * 60)
        print("GERANDO FIXTURES")
        print("=" * 60)
        os.makedirs(PASTA, exist_ok=True)

        modulos = modules_of('A2')
        escrever('a2_P1.json', module_to_dict(modulos['P1']))
        escrever('a2_P1_S2.json', module_to_dict(modulos['P1+S2']))
        escrever('a2_S1_S2.json', module_to_dict(modulos['S1+S2']))
        escrever('a2_weights.json', weights_for('A2').to_json())

        socle = core_submodule(modulos['P1'], ['2'])
        escrever('a2_P1_socle_seq.json', sequence_to_dict(socle, ['2'], ['1']))

        escrever('a2_P1_relation.json', {'tensor': [['0', '0'], ['1', '0']]})
        escrever('a2_unit_comparison.json', {'u': {p.name: ['1'] for p in a2().path_basis if p.length == 0}})
        escrever('a2_cubic_comparison.json', {
            'field': [-2, 0, 0, 1],
            'u': {'e_1': ['1'], 'e_2': ['0', '1'], 'a': ['0', '0', '1']},
        })
        escrever('a2_P1_lift_target.json', {'kind': 'lift', 'vectors': [['1', '0']]})
        escrever('a2_P1_socle_target.json', {'power': 1, 'vectors': [['0', '1']]})

        print("\n✅ Fixtures geradas em", PASTA)


if __name__ == '__main__':
    gerar()
