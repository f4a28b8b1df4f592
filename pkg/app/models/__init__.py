from .autoencoder import AEModel, CurveAutoencoder, ae_encode, ae_train
