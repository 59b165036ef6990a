from flask import Flask

from config import Config


def create_app(config_object=Config):
    app = Flask(__name__)
    app.config.from_object(config_object)

    # app.logger ('app') é a raiz dos loggers de app.services.*
    app.logger.setLevel(app.config.get('LOG_LEVEL', 'WARNING'))

    # Importação dos Blueprints
    from app.routes.onemotive import bp_onemotive
    from app.routes.periods import bp_periods
    from app.routes.yoga import bp_yoga

    # Registro dos Blueprints (só comandos de linha, sem rotas HTTP)
    app.register_blueprint(bp_periods)
    app.register_blueprint(bp_yoga)
    app.register_blueprint(bp_onemotive)

    return app
