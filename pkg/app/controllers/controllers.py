from app.controllers import bench, detectors, generator, metrics, presets


class Controllers:

    def __init__(self):
        self.generator_controller = generator.GeneratorController()
        self.presets_controller = presets.PresetsController()
        self.metrics_controller = metrics.MetricsController()
        self.detectors_controller = detectors.DetectorsController()
        self.bench_controller = bench.BenchController()
