"""Script para fazer varredura geral do corpus de módulos"""
import time

from app import create_app
from app.errors import EngineError
from app.models import tensor_from_vector
from app.services.corpus import corpus_modules, weights_for
from app.services.periods import CERTIFIED, depth_space, endo_quotient, period_space
from app.services.realization import realize_relation
from app.services.yoga import certify_principal, replay


def varredura_completa():
    """Confere oráculo, profundidade, realizações e certificação em todo o corpus"""
    app = create_app()

    with app.app_context():
        print("\n" + "=" * 100)
        print("VARREDURA COMPLETA DO CORPUS")
        print("=" * 100)

        inicio = time.perf_counter()
        modulos = corpus_modules()
        print(f"\nTotal de módulos: {len(modulos)} em {len({alg for alg, _, _ in modulos})} álgebras")

        stats = {
            'oraculo_ok': 0,
            'realizacoes': 0,
            'certified': 0,
            'refuted': 0,
            'unknown': 0,
        }
        problemas = []

        print("\n" + "-" * 100)
        print("ANALISE DETALHADA:")
        print("-" * 100)

        for alg, nome, M in modulos:
            rotulo = f"{alg}/{nome}"
            try:
                oraculo = period_space(M)
                profundo = depth_space(M, max(M.dim, 1), CERTIFIED)
                if profundo.relations == oraculo.relations:
                    stats['oraculo_ok'] += 1
                else:
                    problemas.append(f"{rotulo}: P^k difere do oráculo")

                for vetor in oraculo.relations.vectors():
                    realize_relation(M, tensor_from_vector(M.dim, vetor), oracle=oraculo)
                    stats['realizacoes'] += 1

                veredito = certify_principal(M, weights_for(alg))
                replay(veredito)
                stats[veredito.status.lower()] += 1
                if veredito.status == 'Certified' and veredito.module == M:
                    dim_e = endo_quotient(M).dim
                    if dim_e != oraculo.dim:
                        problemas.append(f"{rotulo}: certificado com dim E = {dim_e} ≠ dim P = {oraculo.dim}")
                print(f"  {rotulo:<28} dim P = {oraculo.dim:<3} {veredito.status}")
            except EngineError as e:
                problemas.append(f"{rotulo}: {type(e).__name__}: {e}")

        if problemas:
            print(f"\n⚠️  PROBLEMAS: {len(problemas)}\n")
            for p in problemas:
                print(f"   ⚠️  {p}")

        print("\n" + "=" * 100)
        print("ESTATISTICAS GERAIS:")
        print("=" * 100)
        print(f"  ✅ Oráculo = P^k: {stats['oraculo_ok']}/{len(modulos)}")
        print(f"  ✅ Relações realizadas: {stats['realizacoes']}")
        print(f"  Certified: {stats['certified']}  Refuted: {stats['refuted']}  Unknown: {stats['unknown']}")
        print(f"  Tempo: {time.perf_counter() - inicio:.1f} s")
        print("\n" + "=" * 100 + "\n")


if __name__ == '__main__':
    varredura_completa()
